use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::stats::PIPELINE_LABELS;
use super::{partition, secs, Family, RunConfig};
use crate::graph::orient_bounded;
use crate::hierarchy::{duplicate_stats, Hierarchy, SuccinctEncoding};
use crate::minor::StructureMinor;
use crate::separator::separate_minor;
use crate::succinct::BitBudget;
use crate::treedec::for_each_bag;
use crate::Result;

/// Scaling metrics of one graph size.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub k: u32,
    pub n: usize,
    pub m: usize,
    pub cap: usize,
    pub clouds: usize,
    pub big: usize,
    pub critical: usize,
    pub minor_nodes: usize,
    /// `|V(F)| · log₂ n / n`.
    pub beta: f64,
    pub separator: usize,
    /// `|S| / √(n log₂ n)`.
    pub separator_ratio: f64,
    pub minis: usize,
    pub duplicates: usize,
    /// `duplicates · log₂ n / n`.
    pub duplicate_ratio: f64,
    pub bags: usize,
    pub width: usize,
    /// `width / (√(n / log₂ n) · log₂ n)`.
    pub width_ratio: f64,
    pub bits: usize,
    pub bits_per_n: f64,
    pub max_in_degree: usize,
    pub rounds: usize,
    pub adj_lookups: usize,
    pub deg_lookups: usize,
    pub seconds: f64,
}

const COLUMNS: &str = "k,n,m,cap,clouds,big,critical,minor_nodes,beta,separator,separator_ratio,minis,duplicates,duplicate_ratio,bags,width,width_ratio,bits,bits_per_n,max_in_degree,rounds,adj_lookups,deg_lookups";

impl BenchRow {
    pub fn header(timings: bool) -> String {
        if timings {
            format!("{COLUMNS},seconds")
        } else {
            COLUMNS.to_string()
        }
    }

    pub fn to_csv(&self, timings: bool) -> String {
        let mut s = format!(
            "{},{},{},{},{},{},{},{},{:.4},{},{:.4},{},{},{:.4},{},{},{:.4},{},{:.2},{},{},{},{}",
            self.k,
            self.n,
            self.m,
            self.cap,
            self.clouds,
            self.big,
            self.critical,
            self.minor_nodes,
            self.beta,
            self.separator,
            self.separator_ratio,
            self.minis,
            self.duplicates,
            self.duplicate_ratio,
            self.bags,
            self.width,
            self.width_ratio,
            self.bits,
            self.bits_per_n,
            self.max_in_degree,
            self.rounds,
            self.adj_lookups,
            self.deg_lookups,
        );
        if timings {
            s.push_str(&format!(",{:.3}", self.seconds));
        }
        s
    }
}

/// Runs the whole pipeline on the family member with `2^k` vertices.
pub fn bench_row(cfg: &RunConfig, family: Family, k: u32) -> Result<BenchRow> {
    let start = Instant::now();
    let g = family.generate(k);
    let n = g.n();
    let log = (n as f64).log2();
    let orientation = orient_bounded(&g, cfg.density)?;

    let mut budget = BitBudget::new();
    let p = partition(cfg, &g, &mut budget);
    let m = StructureMinor::build_budgeted(&p, cfg.density, &mut budget)?;
    let sep = separate_minor(&m, &cfg.separator_options(), &mut budget)?;
    let summary = for_each_bag(&m, &cfg.decompose_options(), |_, _, _| Ok(()))?;
    let h = Hierarchy::build(&m, &cfg.hierarchy_options())?;
    let dups = duplicate_stats(&h.minis, n);
    let e = SuccinctEncoding::from_hierarchy(&g, &h)?;

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ u64::from(k));
    let (mut adj_lookups, mut deg_lookups) = (0, 0);
    for u in g.vertices() {
        let far = rng.gen_range(1..=n as u32);
        adj_lookups = adj_lookups.max(e.adjacent_counted(u, far).1);
        if let Some(&v) = g.neighbors(u).first() {
            adj_lookups = adj_lookups.max(e.adjacent_counted(u, v).1);
        }
        deg_lookups = deg_lookups.max(e.degree_counted(u).1);
    }

    let counts = p.counts();
    let bits = budget.peak_sum(&PIPELINE_LABELS);
    Ok(BenchRow {
        k,
        n,
        m: g.m(),
        cap: p.cap(),
        clouds: counts.total(),
        big: counts.big,
        critical: counts.critical,
        minor_nodes: m.node_count(),
        beta: m.node_count() as f64 * log / n as f64,
        separator: sep.size_s,
        separator_ratio: sep.size_s as f64 / (n as f64 * log).sqrt(),
        minis: dups.minis,
        duplicates: dups.total,
        duplicate_ratio: dups.total as f64 * log / n as f64,
        bags: summary.bags,
        width: summary.width,
        width_ratio: summary.width as f64 / ((n as f64 / log).sqrt() * log),
        bits,
        bits_per_n: bits as f64 / n as f64,
        max_in_degree: orientation.max_in_degree(),
        rounds: orientation.rounds(),
        adj_lookups,
        deg_lookups,
        seconds: secs(start),
    })
}
