//! Signs on the Bruhat covers of `S_n` making the BGG differential square to zero.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::bruhat::{covers_of, Direction};
use crate::error::{Error, Result};
use crate::perm::Permutation;

pub const DEFAULT_MAX_DEGREE: usize = 7;

/// The Hasse diagram of the Bruhat order on all of `S_n`, indexed by
/// [`Permutation::rank`].
#[derive(Clone, Debug)]
pub struct BruhatGraph {
    degree: usize,
    perms: Vec<Permutation>,
    lengths: Vec<usize>,
    /// Sorted ranks of the down-covers of each element.
    down: Vec<Vec<u32>>,
}

impl BruhatGraph {
    pub fn new(n: usize) -> Self {
        let perms: Vec<Permutation> = Permutation::all(n).collect();
        let lengths = perms.iter().map(Permutation::length).collect();
        let down = perms
            .iter()
            .map(|p| {
                let mut d: Vec<u32> = covers_of(p, Direction::Down).iter().map(|x| x.rank() as u32).collect();
                d.sort_unstable();
                d
            })
            .collect();
        BruhatGraph { degree: n, perms, lengths, down }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    pub fn perm(&self, r: usize) -> &Permutation {
        &self.perms[r]
    }

    pub fn length(&self, r: usize) -> usize {
        self.lengths[r]
    }

    pub fn down(&self, r: usize) -> &[u32] {
        &self.down[r]
    }

    /// Ranks ordered by length, then lexicographically.
    pub fn by_length(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&r| (self.lengths[r], r));
        order
    }

    /// Every cover as `(lower, upper)` ranks, sorted.
    pub fn covers(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = (0..self.len())
            .flat_map(|z| self.down[z].iter().map(move |&y| (y, z as u32)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Length-two intervals `[x, z]` as `(x, y1, y2, z)` with `y1 < y2`.
    /// Fails if some interval does not have exactly two middle elements.
    pub fn diamonds(&self) -> Result<Vec<[u32; 4]>> {
        let mut out = Vec::new();
        for z in 0..self.len() {
            for (x, mids) in self.middles(z) {
                let [y1, y2] = mids[..] else {
                    return Err(Error::Invariant(format!(
                        "interval [{}, {}] has {} middle elements",
                        self.perms[x as usize],
                        self.perms[z],
                        mids.len()
                    )));
                };
                out.push([x, y1, y2, z as u32]);
            }
        }
        Ok(out)
    }

    /// For each `x` two below `z`, the down-covers of `z` lying above `x`.
    fn middles(&self, z: usize) -> Vec<(u32, Vec<u32>)> {
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        for &y in &self.down[z] {
            for &x in &self.down[y as usize] {
                pairs.push((x, y));
            }
        }
        pairs.sort_unstable();
        let mut out: Vec<(u32, Vec<u32>)> = Vec::new();
        for (x, y) in pairs {
            match out.last_mut() {
                Some((lx, ys)) if *lx == x => ys.push(y),
                _ => out.push((x, vec![y])),
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignSolver {
    /// Solve for the covers below each element in turn, by length.
    #[default]
    Layered,
    /// One parity system over all covers, spanning-tree edges pinned to `+1`,
    /// eliminated in the given variable order.
    Global { reverse: bool },
}

/// `+1`/`-1` on every cover `x ⋖ y` of `S_n`.
#[derive(Clone, Debug)]
pub struct SignAssignment {
    graph: BruhatGraph,
    /// Parallel to `graph.down`.
    signs: Vec<Vec<i8>>,
}

impl SignAssignment {
    pub fn degree(&self) -> usize {
        self.graph.degree
    }

    pub fn graph(&self) -> &BruhatGraph {
        &self.graph
    }

    /// Sign of the cover `x ⋖ y`, by ranks.
    pub fn sign_by_rank(&self, x: usize, y: usize) -> Option<i8> {
        let d = &self.graph.down[y];
        d.binary_search(&(x as u32)).ok().map(|i| self.signs[y][i])
    }

    pub fn sign(&self, x: &Permutation, y: &Permutation) -> Option<i8> {
        if x.degree() != self.degree() || y.degree() != self.degree() {
            return None;
        }
        self.sign_by_rank(x.rank(), y.rank())
    }

    /// Down-covers of `y` with their signs, by rank.
    pub fn down_signed(&self, y: usize) -> impl Iterator<Item = (usize, i8)> + '_ {
        self.graph.down[y].iter().zip(&self.signs[y]).map(|(&x, &s)| (x as usize, s))
    }

    /// Checks the sign product around every length-two interval is `-1`.
    pub fn check_diamonds(&self) -> Result<usize> {
        let diamonds = self.graph.diamonds()?;
        for &[x, y1, y2, z] in &diamonds {
            let s = |a: u32, b: u32| self.sign_by_rank(a as usize, b as usize).unwrap() as i32;
            if s(x, y1) * s(y1, z) * s(x, y2) * s(y2, z) != -1 {
                return Err(Error::Invariant(format!(
                    "diamond [{}, {}] has sign product +1",
                    self.graph.perms[x as usize], self.graph.perms[z as usize]
                )));
            }
        }
        Ok(diamonds.len())
    }
}

pub fn build_sign_assignment(n: usize) -> Result<SignAssignment> {
    build_sign_assignment_with(n, SignSolver::Layered, DEFAULT_MAX_DEGREE)
}

pub fn build_sign_assignment_with(n: usize, solver: SignSolver, max_degree: usize) -> Result<SignAssignment> {
    if n == 0 {
        return Err(Error::UnsupportedDegree(0));
    }
    if n > max_degree {
        return Err(Error::CapExceeded { what: "sign assignment degree", cap: max_degree });
    }
    let graph = BruhatGraph::new(n);
    let signs = match solver {
        SignSolver::Layered => layered(&graph)?,
        SignSolver::Global { reverse } => global(&graph, reverse)?,
    };
    let out = SignAssignment { graph, signs };
    out.check_diamonds()?;
    Ok(out)
}

fn layered(g: &BruhatGraph) -> Result<Vec<Vec<i8>>> {
    let mut signs: Vec<Vec<i8>> = g.down.iter().map(|d| vec![0; d.len()]).collect();
    for z in g.by_length() {
        let d = &g.down[z];
        if d.is_empty() {
            continue;
        }
        let local = |y: u32| d.binary_search(&y).unwrap();
        let sign = |signs: &Vec<Vec<i8>>, x: u32, y: u32| {
            let i = g.down[y as usize].binary_search(&x).unwrap();
            signs[y as usize][i] as i32
        };
        // Edges between down-covers of z: s(y1,z) s(y2,z) = -s(x,y1) s(x,y2).
        let mut adj: Vec<Vec<(usize, i32)>> = vec![Vec::new(); d.len()];
        for (x, mids) in g.middles(z) {
            let [y1, y2] = mids[..] else {
                return Err(Error::Invariant(format!(
                    "interval [{}, {}] has {} middle elements",
                    g.perms[x as usize],
                    g.perms[z],
                    mids.len()
                )));
            };
            let parity = -sign(&signs, x, y1) * sign(&signs, x, y2);
            adj[local(y1)].push((local(y2), parity));
            adj[local(y2)].push((local(y1), parity));
        }
        let mut value = vec![0i32; d.len()];
        for start in 0..d.len() {
            if value[start] != 0 {
                continue;
            }
            value[start] = 1;
            let mut queue = VecDeque::from([start]);
            while let Some(a) = queue.pop_front() {
                for &(b, parity) in &adj[a] {
                    let want = value[a] * parity;
                    if value[b] == 0 {
                        value[b] = want;
                        queue.push_back(b);
                    } else if value[b] != want {
                        return Err(Error::Invariant(format!(
                            "inconsistent signs below {}",
                            g.perms[z]
                        )));
                    }
                }
            }
        }
        signs[z] = value.into_iter().map(|v| v as i8).collect();
    }
    Ok(signs)
}

fn global(g: &BruhatGraph, reverse: bool) -> Result<Vec<Vec<i8>>> {
    let covers = g.covers();
    let var = |x: u32, y: u32| covers.binary_search(&(x, y)).unwrap();
    let nvars = covers.len();
    let words = nvars.div_ceil(64);
    let mut rows: Vec<(Vec<u64>, bool)> = Vec::new();
    let set = |row: &mut Vec<u64>, i: usize| row[i / 64] ^= 1 << (i % 64);

    for [x, y1, y2, z] in g.diamonds()? {
        let mut row = vec![0u64; words];
        for v in [var(x, y1), var(y1, z), var(x, y2), var(y2, z)] {
            set(&mut row, v);
        }
        rows.push((row, true));
    }
    // Pin a spanning tree of the Hasse diagram (from the identity) to +1.
    let mut seen = vec![false; g.len()];
    let mut up: Vec<Vec<u32>> = vec![Vec::new(); g.len()];
    for &(x, y) in &covers {
        up[x as usize].push(y);
    }
    let root = Permutation::identity(g.degree).rank();
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(a) = queue.pop_front() {
        let nbrs = up[a].iter().map(|&b| (a as u32, b)).chain(g.down[a].iter().map(|&b| (b, a as u32)));
        for (lo, hi) in nbrs.collect::<Vec<_>>() {
            let other = if lo as usize == a { hi } else { lo } as usize;
            if !seen[other] {
                seen[other] = true;
                let mut row = vec![0u64; words];
                set(&mut row, var(lo, hi));
                rows.push((row, false));
                queue.push_back(other);
            }
        }
    }

    let order: Vec<usize> = if reverse { (0..nvars).rev().collect() } else { (0..nvars).collect() };
    let bit = |row: &Vec<u64>, i: usize| row[i / 64] >> (i % 64) & 1 == 1;
    let mut pivot_of = vec![usize::MAX; nvars];
    let mut r = 0;
    for &c in &order {
        let Some(p) = (r..rows.len()).find(|&i| bit(&rows[i].0, c)) else { continue };
        rows.swap(r, p);
        let (pivot_row, pivot_rhs) = rows[r].clone();
        for (i, (row, rhs)) in rows.iter_mut().enumerate() {
            if i != r && bit(row, c) {
                for (a, b) in row.iter_mut().zip(&pivot_row) {
                    *a ^= b;
                }
                *rhs ^= pivot_rhs;
            }
        }
        pivot_of[c] = r;
        r += 1;
    }
    if rows[r..].iter().any(|(_, rhs)| *rhs) {
        return Err(Error::Invariant("sign parity system is inconsistent".into()));
    }
    let value = |c: usize| if pivot_of[c] != usize::MAX && rows[pivot_of[c]].1 { -1i8 } else { 1 };
    Ok((0..g.len())
        .map(|z| g.down[z].iter().map(|&y| value(var(y, z as u32))).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn degree_two() {
        let s = build_sign_assignment(2).unwrap();
        assert_eq!(s.sign(&p("12"), &p("21")), Some(1));
    }

    #[test]
    fn degree_three_covers() {
        let s = build_sign_assignment(3).unwrap();
        assert_eq!(s.graph().covers().len(), 8);
        assert_eq!(s.check_diamonds().unwrap(), 4);
        assert_eq!(s.sign(&p("123"), &p("321")), None);
    }

    #[test]
    fn solvers_satisfy_diamonds() {
        for n in 1..=5 {
            for solver in [SignSolver::Layered, SignSolver::Global { reverse: false }, SignSolver::Global { reverse: true }] {
                let s = build_sign_assignment_with(n, solver, 7).unwrap();
                s.check_diamonds().unwrap();
            }
        }
    }

    #[test]
    fn degree_cap() {
        assert!(matches!(
            build_sign_assignment_with(5, SignSolver::Layered, 4),
            Err(Error::CapExceeded { .. })
        ));
    }
}
