use std::collections::BTreeMap;

use serde::Serialize;

/// Labelled accountant of auxiliary bits.
///
/// Each label keeps a current and a peak count; the peak of the summed total
/// is tracked separately. Releasing more than was charged saturates at zero.
#[derive(Clone, Debug, Default, Serialize)]
pub struct BitBudget {
    labels: BTreeMap<String, LabelUsage>,
    current_total: usize,
    peak_total: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LabelUsage {
    pub current: usize,
    pub peak: usize,
}

impl BitBudget {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn charge(&mut self, label: &str, bits: usize) {
        let entry = self.labels.entry(label.to_string()).or_default();
        entry.current += bits;
        entry.peak = entry.peak.max(entry.current);
        self.current_total += bits;
        self.peak_total = self.peak_total.max(self.current_total);
    }

    pub fn release(&mut self, label: &str, bits: usize) {
        if let Some(entry) = self.labels.get_mut(label) {
            let freed = bits.min(entry.current);
            entry.current -= freed;
            self.current_total -= freed;
        }
    }

    /// Charges `bits`, runs `f`, then releases them.
    pub fn scoped<T>(&mut self, label: &str, bits: usize, f: impl FnOnce(&mut Self) -> T) -> T {
        self.charge(label, bits);
        let out = f(self);
        self.release(label, bits);
        out
    }

    pub fn current(&self, label: &str) -> usize {
        self.labels.get(label).map_or(0, |u| u.current)
    }

    pub fn peak(&self, label: &str) -> usize {
        self.labels.get(label).map_or(0, |u| u.peak)
    }

    pub fn current_total(&self) -> usize {
        self.current_total
    }

    pub fn peak_total(&self) -> usize {
        self.peak_total
    }

    pub fn labels(&self) -> impl Iterator<Item = (&str, LabelUsage)> {
        self.labels.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// Sum of per-label peaks for labels starting with any of `prefixes`.
    pub fn peak_sum(&self, prefixes: &[&str]) -> usize {
        self.labels
            .iter()
            .filter(|(k, _)| prefixes.iter().any(|p| k.starts_with(p)))
            .map(|(_, v)| v.peak)
            .sum()
    }
}
