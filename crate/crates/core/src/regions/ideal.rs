use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::space::normalize_angle;

const EPS: f64 = 1e-9;

/// A closed subset of the boundary circle made of finitely many closed arcs.
///
/// Arcs are `(start, length)` with `start` in `[0, 2pi)` and the arc running
/// counterclockwise. Isolated points are arcs of length zero.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct IdealSet {
    arcs: Vec<(f64, f64)>,
}

impl IdealSet {
    pub fn empty() -> Self {
        Self { arcs: Vec::new() }
    }

    pub fn full() -> Self {
        Self { arcs: vec![(0.0, TAU)] }
    }

    pub fn point(theta: f64) -> Self {
        Self { arcs: vec![(normalize_angle(theta), 0.0)] }
    }

    /// Counterclockwise arc from `start` to `end`.
    pub fn arc(start: f64, end: f64) -> Self {
        let len = (end - start).rem_euclid(TAU);
        Self::from_arcs(vec![(start, len)])
    }

    pub fn from_arcs(arcs: Vec<(f64, f64)>) -> Self {
        let mut s = Self { arcs };
        s.canonicalize();
        s
    }

    pub fn arcs(&self) -> &[(f64, f64)] {
        &self.arcs
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.arcs.len() == 1 && self.arcs[0].1 >= TAU - EPS
    }

    /// Isolated points of the set.
    pub fn points(&self) -> Vec<f64> {
        self.arcs.iter().filter(|a| a.1 <= EPS).map(|a| a.0).collect()
    }

    pub fn contains(&self, theta: f64) -> bool {
        self.arcs.iter().any(|&(s, l)| {
            let d = (theta - s).rem_euclid(TAU);
            d <= l + EPS || d >= TAU - EPS
        })
    }

    pub fn intersect(&self, other: &IdealSet) -> IdealSet {
        let mut out = Vec::new();
        for &(s1, l1) in &self.arcs {
            for &(s2, l2) in &other.arcs {
                let off = (s2 - s1).rem_euclid(TAU);
                for shift in [off - TAU, off, off + TAU] {
                    let lo = shift.max(0.0);
                    let hi = (shift + l2).min(l1);
                    if hi >= lo - EPS {
                        out.push((s1 + lo, (hi - lo).max(0.0)));
                    }
                }
            }
        }
        Self::from_arcs(out)
    }

    pub fn union(&self, other: &IdealSet) -> IdealSet {
        let mut arcs = self.arcs.clone();
        arcs.extend_from_slice(&other.arcs);
        Self::from_arcs(arcs)
    }

    fn canonicalize(&mut self) {
        let mut arcs: Vec<(f64, f64)> = self
            .arcs
            .iter()
            .map(|&(s, l)| (normalize_angle(s), l.clamp(0.0, TAU)))
            .collect();
        if arcs.iter().any(|a| a.1 >= TAU - EPS) {
            self.arcs = vec![(0.0, TAU)];
            return;
        }
        arcs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let mut merged: Vec<(f64, f64)> = Vec::new();
        for (s, l) in arcs {
            if let Some(last) = merged.last_mut() {
                let end = last.0 + last.1;
                if s <= end + EPS {
                    last.1 = (s + l).max(end) - last.0;
                    continue;
                }
            }
            merged.push((s, l));
        }
        // wrap-around merge
        if merged.len() > 1 {
            let (ls, ll) = *merged.last().unwrap();
            let (fs, fl) = merged[0];
            if ls + ll >= fs + TAU - EPS {
                let end = (fs + fl + TAU).max(ls + ll);
                merged.pop();
                merged[0] = (ls, end - ls);
                if merged[0].1 >= TAU - EPS {
                    merged = vec![(0.0, TAU)];
                } else {
                    let first = merged.remove(0);
                    merged.push(first);
                    merged.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
                }
            }
        }
        if merged.len() == 1 && merged[0].1 >= TAU - EPS {
            merged = vec![(0.0, TAU)];
        }
        self.arcs = merged;
    }
}
