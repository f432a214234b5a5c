use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use super::{partition, secs, RunConfig};
use crate::cloudpart::CloudCounts;
use crate::graph::{orient_bounded, StaticGraph};
use crate::hierarchy::{duplicate_stats, DuplicateStats, EncodingStats, Hierarchy, SuccinctEncoding};
use crate::minor::{MinorCounts, StructureMinor};
use crate::separator::{separate_minor, Rule};
use crate::succinct::{BitBudget, LabelUsage};
use crate::treedec::for_each_bag;
use crate::Result;

/// Label prefixes of the partition, minor and separator working space.
pub const PIPELINE_LABELS: [&str; 3] = ["cloudpart.", "minor.", "separator."];

#[derive(Clone, Debug, Serialize)]
pub struct StatsReport {
    pub n: usize,
    pub m: usize,
    pub cloud_cap: usize,
    pub clouds: CloudCounts,
    pub minor: MinorCounts,
    pub separator: SeparatorStats,
    pub treedec: TreedecStats,
    pub orientation: OrientationStats,
    /// Absent in bounded-density mode.
    pub duplicates: Option<DuplicateStats>,
    pub encoding: Option<EncodingStats>,
    pub budget: BTreeMap<String, LabelUsage>,
    pub pipeline_bits: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<&'static str, f64>>,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SeparatorStats {
    pub size_a: usize,
    pub size_s: usize,
    pub size_b: usize,
    pub rule: Rule,
    pub split_nodes: usize,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct TreedecStats {
    pub bags: usize,
    pub width: usize,
    pub separator_calls: usize,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct OrientationStats {
    pub max_in_degree: usize,
    pub rounds: usize,
}

pub(super) fn collect(cfg: &RunConfig, g: &StaticGraph) -> Result<StatsReport> {
    let mut timings = BTreeMap::new();
    let mut budget = BitBudget::new();

    let start = Instant::now();
    let orientation = orient_bounded(g, cfg.density)?;
    let orientation = OrientationStats {
        max_in_degree: orientation.max_in_degree(),
        rounds: orientation.rounds(),
    };
    timings.insert("orientation", secs(start));

    let start = Instant::now();
    let p = partition(cfg, g, &mut budget);
    timings.insert("partition", secs(start));

    let start = Instant::now();
    let m = StructureMinor::build_budgeted(&p, cfg.density, &mut budget)?;
    timings.insert("minor", secs(start));

    let start = Instant::now();
    let sep = separate_minor(&m, &cfg.separator_options(), &mut budget)?;
    timings.insert("separator", secs(start));

    let start = Instant::now();
    let summary = for_each_bag(&m, &cfg.decompose_options(), |_, _, _| Ok(()))?;
    timings.insert("treedec", secs(start));

    let (duplicates, encoding) = if cfg.phi.is_none() {
        let start = Instant::now();
        let h = Hierarchy::build(&m, &cfg.hierarchy_options())?;
        timings.insert("hierarchy", secs(start));
        let start = Instant::now();
        let e = SuccinctEncoding::from_hierarchy(g, &h)?;
        timings.insert("encoding", secs(start));
        (Some(duplicate_stats(&h.minis, g.n())), Some(e.stats()))
    } else {
        (None, None)
    };

    Ok(StatsReport {
        n: g.n(),
        m: g.m(),
        cloud_cap: p.cap(),
        clouds: p.counts(),
        minor: m.counts(),
        separator: SeparatorStats {
            size_a: sep.size_a,
            size_s: sep.size_s,
            size_b: sep.size_b,
            rule: sep.rule,
            split_nodes: sep.split_nodes,
        },
        treedec: TreedecStats {
            bags: summary.bags,
            width: summary.width,
            separator_calls: summary.separator_calls,
        },
        orientation,
        duplicates,
        encoding,
        pipeline_bits: budget.peak_sum(&PIPELINE_LABELS),
        budget: budget.labels().map(|(k, v)| (k.to_string(), v)).collect(),
        timings: cfg.timings.then_some(timings),
    })
}
