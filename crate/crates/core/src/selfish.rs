//! Maximal selfish subsets: inclusion-maximal sets with no two consecutive members.

use serde::{Deserialize, Serialize};

use crate::support::SupportSet;

/// All maximal selfish subsets of a universe.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfishFamily {
    pub universe: SupportSet,
    /// Sorted by member list.
    pub members: Vec<SupportSet>,
}

impl SelfishFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: SupportSet) -> bool {
        self.members.contains(&x)
    }
}

/// Maximal selfish subsets of `[1, k]`, built from those of `[1, k-2]` (adding
/// `k`) and `[1, k-3]` (adding `k-1`).
pub fn maximal_selfish_interval(k: usize) -> Vec<SupportSet> {
    let set = |xs: &[usize]| xs.iter().copied().collect::<SupportSet>();
    let mut table: Vec<Vec<SupportSet>> = vec![
        vec![SupportSet::EMPTY],
        vec![set(&[1])],
        vec![set(&[1]), set(&[2])],
        vec![set(&[1, 3]), set(&[2])],
    ];
    for m in 4..=k {
        let mut q: Vec<SupportSet> = table[m - 2].iter().map(|x| x.with(m)).collect();
        q.extend(table[m - 3].iter().map(|y| y.with(m - 1)));
        table.push(q);
    }
    let mut out = table.swap_remove(k);
    out.sort_by_key(|x| x.to_vec());
    out
}

/// Maximal selfish subsets of an arbitrary universe: products over its
/// maximal interval components.
pub fn maximal_selfish(universe: SupportSet) -> SelfishFamily {
    let mut members = vec![SupportSet::EMPTY];
    for comp in universe.interval_components() {
        let shift = comp.min().unwrap() - 1;
        let local: Vec<SupportSet> = maximal_selfish_interval(comp.len())
            .into_iter()
            .map(|x| SupportSet::from_bits(x.bits() << shift))
            .collect();
        members = members
            .iter()
            .flat_map(|a| local.iter().map(move |b| a.union(*b)))
            .collect();
    }
    members.sort_by_key(|x| x.to_vec());
    SelfishFamily { universe, members }
}

/// `|Q_k|`: 1, 2, 2 for `k = 1, 2, 3`, then `|Q_k| = |Q_{k-2}| + |Q_{k-3}|`.
pub fn selfish_count(k: usize) -> u64 {
    assert!(k >= 1, "selfish_count is defined for k >= 1");
    let mut q = vec![0u64, 1, 2, 2];
    for m in 4..=k {
        q.push(q[m - 2] + q[m - 3]);
    }
    q[k]
}
