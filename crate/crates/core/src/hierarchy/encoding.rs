use std::io::{Read, Write};
use std::path::Path;

use serde::Serialize;

use super::{Hierarchy, HierarchyOptions, MicroTable, DENSE_LIMIT};
use crate::cloudpart::CloudPartition;
use crate::graph::{orient_bounded, StaticGraph};
use crate::minor::StructureMinor;
use crate::succinct::{BitVec, IndexableDictionary, IntVec, SpaceUsage, StaticAllocator};
use crate::{Error, Result, Vertex};

const MAGIC: &[u8; 8] = b"CLDGENC1";

/// Most lookups a degree query performs.
pub const DEGREE_LOOKUPS: usize = 11;

/// Compact two-level representation of `G`.
///
/// Mini graphs are stored as one run of vertex slots (global labels), micro
/// graphs as one run of positions (mini slots). A vertex whose edges all live
/// in a single micro graph is answered from that micro graph's table entry;
/// vertices shared by several micro graphs keep their degree and, for edges
/// between two such vertices, a bounded list of in-neighbours.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuccinctEncoding {
    n: usize,
    delta: u32,
    t: usize,
    table: MicroTable,
    mini_lists: IntVec,
    mini_starts: IndexableDictionary,
    occurrences: StaticAllocator,
    occurrence_slots: IntVec,
    micro_lists: IntVec,
    /// One marker per micro graph plus a closing marker.
    micro_starts: IndexableDictionary,
    codes: StaticAllocator,
    code_bits: BitVec,
    slot_micros: StaticAllocator,
    slot_micro_positions: IntVec,
    shared: IndexableDictionary,
    shared_degrees: IntVec,
    in_slots: usize,
    shared_in: IntVec,
}

#[derive(Clone, Copy, Debug)]
struct Micro {
    start: usize,
    k: usize,
    code: u64,
}

/// Counts dictionary, array and table accesses of one query.
#[derive(Default)]
struct Probe(usize);

impl Probe {
    #[inline]
    fn hit<T>(&mut self, x: T) -> T {
        self.0 += 1;
        x
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EncodingStats {
    pub n: usize,
    pub delta: u32,
    pub micro_cap: usize,
    pub minis: usize,
    pub micros: usize,
    pub mini_slots: usize,
    pub shared_vertices: usize,
    pub table_entries: usize,
    pub table_bits: usize,
    pub bits: usize,
}

impl SuccinctEncoding {
    /// Partitions `g` with cloud factor `c` and encodes it.
    pub fn encode(g: &StaticGraph, c: f64, opts: &HierarchyOptions) -> Result<Self> {
        let p = CloudPartition::build(g, c);
        let minor = StructureMinor::build(&p)?;
        let h = Hierarchy::build(&minor, opts)?;
        Self::from_hierarchy(g, &h)
    }

    pub fn from_hierarchy(g: &StaticGraph, h: &Hierarchy) -> Result<Self> {
        let n = g.n();
        let t = h.micro_cap;
        let table = MicroTable::new(t, h.micros.iter().flatten().map(|m| (m.piece.len(), m.code)))?;

        let mut mini_offset = Vec::with_capacity(h.minis.len());
        let mut slots: Vec<u64> = Vec::new();
        let mut mini_marks = Vec::new();
        for m in &h.minis {
            mini_offset.push(slots.len());
            for (i, &x) in m.vertices().iter().enumerate() {
                slots.push(x as u64);
                mini_marks.push(i == 0);
            }
        }
        let slot_count = slots.len();
        let mut occ_count = vec![0usize; n + 1];
        for &x in &slots {
            occ_count[x as usize] += 1;
        }
        let occurrences = StaticAllocator::new(occ_count[1..].iter().copied());
        let mut fill: Vec<usize> = (1..=n).map(|v| occurrences.locate_unchecked(v)).collect();
        let mut occurrence_slots = IntVec::with_max(slot_count, slot_count.saturating_sub(1) as u64);
        for (s, &x) in slots.iter().enumerate() {
            occurrence_slots.set(fill[x as usize - 1], s as u64);
            fill[x as usize - 1] += 1;
        }

        let mut positions: Vec<u64> = Vec::new();
        let mut micro_marks = Vec::new();
        let mut micro_codes = Vec::new();
        for (m, micros) in h.micros.iter().enumerate() {
            for micro in micros {
                let k = micro.piece.len();
                if k > t {
                    return Err(Error::Internal(format!("micro graph of {k} vertices exceeds the cap {t}")));
                }
                let code = table
                    .code(k, micro.code)
                    .ok_or_else(|| Error::Internal("micro graph missing from the table".into()))?;
                micro_codes.push((k, code));
                for (i, &l) in micro.piece.vertices().iter().enumerate() {
                    positions.push((mini_offset[m] + l as usize - 1) as u64);
                    micro_marks.push(i == 0);
                }
            }
        }
        micro_marks.push(true);
        let mut per_slot = vec![0usize; slot_count];
        for &s in &positions {
            per_slot[s as usize] += 1;
        }
        let slot_micros = StaticAllocator::new(per_slot.iter().copied());
        let mut fill: Vec<usize> = (1..=slot_count).map(|s| slot_micros.locate_unchecked(s)).collect();
        let mut slot_micro_positions = IntVec::with_max(positions.len(), positions.len().saturating_sub(1) as u64);
        for (q, &s) in positions.iter().enumerate() {
            slot_micro_positions.set(fill[s as usize], q as u64);
            fill[s as usize] += 1;
        }

        let codes = StaticAllocator::new(micro_codes.iter().map(|&(k, _)| table.code_width(k)));
        let mut code_bits = BitVec::new(codes.payload_bits());
        for (i, &(k, code)) in micro_codes.iter().enumerate() {
            code_bits.set_bits(codes.locate_unchecked(i + 1), table.code_width(k), code);
        }

        let mut micro_occ = vec![0usize; n + 1];
        for (s, &x) in slots.iter().enumerate() {
            micro_occ[x as usize] += per_slot[s];
        }
        let shared_list: Vec<Vertex> = g.vertices().filter(|&v| micro_occ[v as usize] > 1).collect();
        let shared = IndexableDictionary::new(BitVec::from_bits(g.vertices().map(|v| micro_occ[v as usize] > 1)));
        let shared_degrees = IntVec::from_slice(&shared_list.iter().map(|&v| g.degree(v) as u64).collect::<Vec<_>>());
        let sub = g.induced(&shared_list);
        let orientation = (3..)
            .find_map(|d| orient_bounded(&sub, d).ok())
            .expect("some density bound holds");
        let in_slots = orientation.in_degree_bound().max(1);
        let mut shared_in = IntVec::with_max(shared_list.len() * in_slots, n as u64);
        for (r, _) in shared_list.iter().enumerate() {
            for (s, x) in orientation.in_neighbors(r as Vertex + 1).enumerate() {
                shared_in.set(r * in_slots + s, shared_list[x as usize - 1] as u64);
            }
        }

        Ok(Self {
            n,
            delta: h.delta,
            t,
            table,
            mini_lists: IntVec::from_slice(&slots),
            mini_starts: IndexableDictionary::new(BitVec::from_bits(mini_marks)),
            occurrences,
            occurrence_slots,
            micro_lists: IntVec::from_slice(&positions),
            micro_starts: IndexableDictionary::new(BitVec::from_bits(micro_marks)),
            codes,
            code_bits,
            slot_micros,
            slot_micro_positions,
            shared,
            shared_degrees,
            in_slots,
            shared_in,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }

    pub fn micro_cap(&self) -> usize {
        self.t
    }

    pub fn table(&self) -> &MicroTable {
        &self.table
    }

    pub fn mini_count(&self) -> usize {
        self.mini_starts.count_ones()
    }

    pub fn micro_count(&self) -> usize {
        self.micro_starts.count_ones() - 1
    }

    /// Mini graph holding the primary occurrence of `v`.
    pub fn primary_mini(&self, v: Vertex) -> usize {
        let slot = self.occurrence_slots.get(self.occurrences.locate_unchecked(v as usize)) as usize;
        self.mini_starts.rank_unchecked(slot + 1) - 1
    }

    fn in_range(&self, v: Vertex) -> bool {
        v >= 1 && v as usize <= self.n
    }

    /// Micro position of a vertex that occurs in exactly one micro graph.
    fn sole_position(&self, v: Vertex, p: &mut Probe) -> usize {
        let occ = p.hit(self.occurrences.locate_unchecked(v as usize));
        let slot = p.hit(self.occurrence_slots.get(occ)) as usize;
        let at = p.hit(self.slot_micros.locate_unchecked(slot + 1));
        p.hit(self.slot_micro_positions.get(at)) as usize
    }

    fn micro_at(&self, q: usize, p: &mut Probe) -> Micro {
        let id = p.hit(self.micro_starts.rank_unchecked(q + 1)) - 1;
        let start = p.hit(self.micro_starts.select_unchecked(id + 1));
        let k = p.hit(self.micro_starts.select_unchecked(id + 2)) - start;
        let at = p.hit(self.codes.locate_unchecked(id + 1));
        let code = p.hit(self.code_bits.get_bits(at, self.table.code_width(k)));
        Micro { start, k, code }
    }

    fn label_at(&self, q: usize, p: &mut Probe) -> Vertex {
        let slot = p.hit(self.micro_lists.get(q)) as usize;
        p.hit(self.mini_lists.get(slot)) as Vertex
    }

    /// Most lookups an adjacency query can perform; depends only on `t` and
    /// the in-neighbour slot count.
    pub fn adjacency_lookup_bound(&self) -> usize {
        let both_lone = 2 + 2 * 4 + 5 + 1;
        let both_shared = 2 + 2 * (1 + self.in_slots);
        let mixed = 2 + 4 + 5 + 2 * self.t + 1;
        both_lone.max(both_shared).max(mixed)
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.adjacent_counted(u, v).0
    }

    /// Adjacency answer and the number of lookups it took.
    pub fn adjacent_counted(&self, u: Vertex, v: Vertex) -> (bool, usize) {
        let mut p = Probe::default();
        let answer = self.adjacent_probe(u, v, &mut p);
        (answer, p.0)
    }

    fn adjacent_probe(&self, u: Vertex, v: Vertex, p: &mut Probe) -> bool {
        if u == v || !self.in_range(u) || !self.in_range(v) {
            return false;
        }
        let su = p.hit(self.shared.get(u as usize - 1));
        let sv = p.hit(self.shared.get(v as usize - 1));
        match (su, sv) {
            (false, false) => {
                let (qu, qv) = (self.sole_position(u, p), self.sole_position(v, p));
                let m = self.micro_at(qu, p);
                if qv < m.start || qv >= m.start + m.k {
                    return false;
                }
                p.hit(self.table.adjacent(m.k, m.code, qu - m.start, qv - m.start))
            }
            (true, true) => self.in_list(u, v, p) || self.in_list(v, u, p),
            _ => {
                let (lone, other) = if su { (v, u) } else { (u, v) };
                let q = self.sole_position(lone, p);
                let m = self.micro_at(q, p);
                for j in 0..m.k {
                    if self.label_at(m.start + j, p) == other {
                        return p.hit(self.table.adjacent(m.k, m.code, q - m.start, j));
                    }
                }
                false
            }
        }
    }

    /// Whether `x` is a stored in-neighbour of shared vertex `v`.
    fn in_list(&self, x: Vertex, v: Vertex, p: &mut Probe) -> bool {
        let r = p.hit(self.shared.rank_unchecked(v as usize - 1));
        for s in 0..self.in_slots {
            let y = p.hit(self.shared_in.get(r * self.in_slots + s)) as Vertex;
            if y == 0 {
                break;
            }
            if y == x {
                return true;
            }
        }
        false
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.degree_counted(v).0
    }

    pub fn degree_counted(&self, v: Vertex) -> (usize, usize) {
        let mut p = Probe::default();
        if !self.in_range(v) {
            return (0, 0);
        }
        let d = if p.hit(self.shared.get(v as usize - 1)) {
            let r = p.hit(self.shared.rank_unchecked(v as usize - 1));
            p.hit(self.shared_degrees.get(r)) as usize
        } else {
            let q = self.sole_position(v, &mut p);
            let m = self.micro_at(q, &mut p);
            p.hit(self.table.degree(m.k, m.code, q - m.start))
        };
        (d, p.0)
    }

    /// Neighbours of `v`, gathered micro graph by micro graph.
    pub fn neighbors(&self, v: Vertex) -> Neighbors<'_> {
        let (occ, occ_end) = if self.in_range(v) {
            let start = self.occurrences.locate_unchecked(v as usize);
            (start, start + self.occurrences.size(v as usize))
        } else {
            (0, 0)
        };
        Neighbors {
            enc: self,
            occ,
            occ_end,
            at: 0,
            at_end: 0,
            start: 0,
            row: 0,
        }
    }

    pub fn stats(&self) -> EncodingStats {
        EncodingStats {
            n: self.n,
            delta: self.delta,
            micro_cap: self.t,
            minis: self.mini_count(),
            micros: self.micro_count(),
            mini_slots: self.mini_lists.len(),
            shared_vertices: self.shared.count_ones(),
            table_entries: self.table.entries(),
            table_bits: self.table.bits(),
            bits: self.bits(),
        }
    }

    pub fn write_to(&self, w: impl Write) -> Result<()> {
        let mut w = Encoder(w);
        w.0.write_all(MAGIC)?;
        for x in [self.n as u64, self.delta as u64, self.t as u64, self.in_slots as u64] {
            w.u64(x)?;
        }
        for k in DENSE_LIMIT + 1..=self.t {
            let masks = self.table.sparse_masks(k);
            w.u64(masks.len() as u64)?;
            for &m in masks {
                w.u64(m)?;
            }
        }
        w.ints(&self.mini_lists)?;
        w.bits(self.mini_starts.bitvec())?;
        w.bits(self.occurrences.markers().bitvec())?;
        w.ints(&self.occurrence_slots)?;
        w.ints(&self.micro_lists)?;
        w.bits(self.micro_starts.bitvec())?;
        w.bits(self.codes.markers().bitvec())?;
        w.bits(&self.code_bits)?;
        w.bits(self.slot_micros.markers().bitvec())?;
        w.ints(&self.slot_micro_positions)?;
        w.bits(self.shared.bitvec())?;
        w.ints(&self.shared_degrees)?;
        w.ints(&self.shared_in)?;
        Ok(())
    }

    pub fn read_from(r: impl Read) -> Result<Self> {
        let mut r = Decoder(r);
        let mut magic = [0u8; 8];
        r.0.read_exact(&mut magic)?;
        if &magic != MAGIC {
            return Err(Error::Format("not an encoding file".into()));
        }
        let n = r.usize()?;
        let delta = u32::try_from(r.u64()?).map_err(|_| Error::Format("bad δ".into()))?;
        let t = r.usize()?;
        let in_slots = r.usize()?;
        if t > 8 {
            return Err(Error::Format(format!("micro cap {t} exceeds 8")));
        }
        let mut used = Vec::new();
        for k in DENSE_LIMIT + 1..=t {
            let count = r.usize()?;
            for _ in 0..count {
                used.push((k, r.u64()?));
            }
        }
        let table = MicroTable::new(t, used)?;
        let enc = Self {
            n,
            delta,
            t,
            table,
            mini_lists: r.ints()?,
            mini_starts: IndexableDictionary::new(r.bits()?),
            occurrences: StaticAllocator::from_markers(r.bits()?),
            occurrence_slots: r.ints()?,
            micro_lists: r.ints()?,
            micro_starts: IndexableDictionary::new(r.bits()?),
            codes: StaticAllocator::from_markers(r.bits()?),
            code_bits: r.bits()?,
            slot_micros: StaticAllocator::from_markers(r.bits()?),
            slot_micro_positions: r.ints()?,
            shared: IndexableDictionary::new(r.bits()?),
            shared_degrees: r.ints()?,
            in_slots,
            shared_in: r.ints()?,
        };
        enc.check_shape()?;
        Ok(enc)
    }

    fn check_shape(&self) -> Result<()> {
        let slots = self.mini_lists.len();
        let positions = self.micro_lists.len();
        let ok = self.occurrences.len() == self.n
            && self.occurrence_slots.len() == slots
            && self.mini_starts.len() == slots
            && self.micro_starts.len() == positions + 1
            && self.micro_starts.get(positions)
            && self.codes.len() == self.micro_count()
            && self.code_bits.len() == self.codes.payload_bits()
            && self.slot_micros.len() == slots
            && self.slot_micro_positions.len() == positions
            && self.shared.len() == self.n
            && self.shared_degrees.len() == self.shared.count_ones()
            && self.shared_in.len() == self.shared.count_ones() * self.in_slots;
        if ok {
            Ok(())
        } else {
            Err(Error::Format("inconsistent section lengths".into()))
        }
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let file = std::fs::File::create(path)?;
        let mut w = std::io::BufWriter::new(file);
        self.write_to(&mut w)?;
        w.flush()?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::read_from(std::io::BufReader::new(std::fs::File::open(path)?))
    }
}

impl SpaceUsage for SuccinctEncoding {
    fn bits(&self) -> usize {
        self.table.bits()
            + self.mini_lists.bits()
            + self.mini_starts.bits()
            + self.occurrences.bits()
            + self.occurrence_slots.bits()
            + self.micro_lists.bits()
            + self.micro_starts.bits()
            + self.codes.bits()
            + self.code_bits.len()
            + self.slot_micros.bits()
            + self.slot_micro_positions.bits()
            + self.shared.bits()
            + self.shared_degrees.bits()
            + self.shared_in.bits()
    }
}

/// Iterator over the neighbours of one vertex.
pub struct Neighbors<'a> {
    enc: &'a SuccinctEncoding,
    occ: usize,
    occ_end: usize,
    at: usize,
    at_end: usize,
    start: usize,
    row: u64,
}

impl Iterator for Neighbors<'_> {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        let e = self.enc;
        let mut p = Probe::default();
        loop {
            if self.row != 0 {
                let j = self.row.trailing_zeros() as usize;
                self.row &= self.row - 1;
                return Some(e.label_at(self.start + j, &mut p));
            }
            if self.at < self.at_end {
                let q = e.slot_micro_positions.get(self.at) as usize;
                self.at += 1;
                let m = e.micro_at(q, &mut p);
                self.start = m.start;
                self.row = e.table.row(m.k, m.code, q - m.start);
                continue;
            }
            if self.occ < self.occ_end {
                let slot = e.occurrence_slots.get(self.occ) as usize;
                self.occ += 1;
                self.at = e.slot_micros.locate_unchecked(slot + 1);
                self.at_end = self.at + e.slot_micros.size(slot + 1);
                continue;
            }
            return None;
        }
    }
}

struct Encoder<W>(W);

impl<W: Write> Encoder<W> {
    fn u64(&mut self, x: u64) -> Result<()> {
        self.0.write_all(&x.to_le_bytes())?;
        Ok(())
    }

    fn bits(&mut self, b: &BitVec) -> Result<()> {
        self.u64(b.len() as u64)?;
        for &w in b.words() {
            self.u64(w)?;
        }
        Ok(())
    }

    fn ints(&mut self, v: &IntVec) -> Result<()> {
        self.u64(v.len() as u64)?;
        self.u64(v.width() as u64)?;
        self.bits(v.raw())
    }
}

struct Decoder<R>(R);

impl<R: Read> Decoder<R> {
    fn u64(&mut self) -> Result<u64> {
        let mut buf = [0u8; 8];
        self.0.read_exact(&mut buf)?;
        Ok(u64::from_le_bytes(buf))
    }

    fn usize(&mut self) -> Result<usize> {
        usize::try_from(self.u64()?).map_err(|_| Error::Format("length overflow".into()))
    }

    fn bits(&mut self) -> Result<BitVec> {
        let len = self.usize()?;
        let words = len.div_ceil(64);
        if words > 1 << 32 {
            return Err(Error::Format(format!("bitvector of {len} bits")));
        }
        let words = (0..words).map(|_| self.u64()).collect::<Result<Vec<_>>>()?;
        Ok(BitVec::from_words(words, len))
    }

    fn ints(&mut self) -> Result<IntVec> {
        let len = self.usize()?;
        let width = self.usize()?;
        let bits = self.bits()?;
        if width > 64 || width.checked_mul(len) != Some(bits.len()) {
            return Err(Error::Format("integer array length mismatch".into()));
        }
        Ok(IntVec::from_parts(bits, width, len))
    }
}
