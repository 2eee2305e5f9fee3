//! Level combinatorics for the tower of cylinder Birman-Wenzl algebras:
//! vertices are pairs of integer partitions, edges add or remove a single
//! box in either component, and squared path counts reproduce the algebra
//! dimensions `2^n (2n-1)!!`.

use std::collections::BTreeMap;

/// An integer partition as a weakly decreasing list of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(pub Vec<u32>);

impl Partition {
    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    fn validate(&self) {
        for w in self.0.windows(2) {
            assert!(w[0] >= w[1], "parts must be weakly decreasing");
        }
        assert!(self.0.iter().all(|&p| p > 0), "parts must be positive");
    }

    /// All partitions obtained by adding one box.
    pub fn add_box(&self) -> Vec<Partition> {
        self.validate();
        let mut out = Vec::new();
        for i in 0..self.0.len() {
            if i == 0 || self.0[i - 1] > self.0[i] {
                let mut p = self.0.clone();
                p[i] += 1;
                out.push(Partition(p));
            }
        }
        let mut p = self.0.clone();
        p.push(1);
        out.push(Partition(p));
        out
    }

    /// All partitions obtained by removing one box.
    pub fn remove_box(&self) -> Vec<Partition> {
        self.validate();
        let mut out = Vec::new();
        for i in 0..self.0.len() {
            if i + 1 == self.0.len() || self.0[i] > self.0[i + 1] {
                let mut p = self.0.clone();
                p[i] -= 1;
                if p[i] == 0 {
                    p.remove(i);
                }
                out.push(Partition(p));
            }
        }
        out
    }

    pub fn render(&self) -> String {
        if self.0.is_empty() {
            return "-".to_string();
        }
        self.0
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// A pair of partitions; belongs to level `n` when the total size is
/// `n, n-2, n-4, ...`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartitionPair {
    pub left: Partition,
    pub right: Partition,
}

impl PartitionPair {
    pub fn new(left: Partition, right: Partition) -> PartitionPair {
        PartitionPair { left, right }
    }

    pub fn empty() -> PartitionPair {
        PartitionPair::new(Partition::empty(), Partition::empty())
    }

    pub fn total_size(&self) -> u32 {
        self.left.size() + self.right.size()
    }

    pub fn in_level(&self, n: u32) -> bool {
        let s = self.total_size();
        s <= n && (n - s).is_multiple_of(2)
    }

    /// All pairs reached by adding or removing one box in either component.
    pub fn branching(&self) -> Vec<PartitionPair> {
        let mut out = Vec::new();
        for l in self.left.add_box() {
            out.push(PartitionPair::new(l, self.right.clone()));
        }
        for l in self.left.remove_box() {
            out.push(PartitionPair::new(l, self.right.clone()));
        }
        for r in self.right.add_box() {
            out.push(PartitionPair::new(self.left.clone(), r));
        }
        for r in self.right.remove_box() {
            out.push(PartitionPair::new(self.left.clone(), r));
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn render(&self) -> String {
        format!("({}|{})", self.left.render(), self.right.render())
    }
}

fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        let top = max.min(n);
        for p in (1..=top).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n.max(1), &mut Vec::new(), &mut out);
    out
}

/// All level-`n` vertices: pairs of total size `n, n-2, ...`, in
/// deterministic (lexicographic) order.
pub fn level_vertices(n: u32) -> Vec<PartitionPair> {
    let mut out = Vec::new();
    let mut s = n;
    loop {
        for a in 0..=s {
            let b = s - a;
            for l in partitions_of(a) {
                for r in partitions_of(b) {
                    out.push(PartitionPair::new(l.clone(), r));
                }
            }
        }
        if s < 2 {
            break;
        }
        s -= 2;
    }
    out.sort();
    out
}

/// Number of downward paths from the empty pair at level 0 to each level-`n`
/// vertex through consecutive levels.
pub fn path_counts(n: u32) -> BTreeMap<PartitionPair, u64> {
    let mut counts: BTreeMap<PartitionPair, u64> = BTreeMap::new();
    counts.insert(PartitionPair::empty(), 1);
    for level in 1..=n {
        let verts = level_vertices(level);
        let mut next: BTreeMap<PartitionPair, u64> = BTreeMap::new();
        for v in verts {
            let mut c = 0u64;
            for u in v.branching() {
                if u.in_level(level - 1) {
                    c += counts.get(&u).copied().unwrap_or(0);
                }
            }
            if c > 0 {
                next.insert(v, c);
            }
        }
        counts = next;
    }
    counts
}

/// `2^n (2n-1)!!` as a u128.
pub fn expected_dimension(n: u32) -> u128 {
    let df: u128 = (0..n as u128).fold(1, |acc, k| acc * (2 * k + 1));
    (1u128 << n) * df
}

/// True iff the squared path counts at level `n` sum to `2^n (2n-1)!!`.
pub fn dimension_check(n: u32) -> bool {
    let sum: u128 = path_counts(n)
        .values()
        .map(|&c| (c as u128) * (c as u128))
        .sum();
    sum == expected_dimension(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn pp(l: &[u32], r: &[u32]) -> PartitionPair {
        PartitionPair::new(Partition(l.to_vec()), Partition(r.to_vec()))
    }

    #[test]
    fn level_zero_and_one() {
        assert_eq!(level_vertices(0), vec![PartitionPair::empty()]);
        let l1 = level_vertices(1);
        assert_eq!(l1.len(), 2);
        assert!(l1.contains(&pp(&[1], &[])));
        assert!(l1.contains(&pp(&[], &[1])));
    }

    #[test]
    fn level_two_matches_diagram() {
        // six vertices at level 2
        let l2: BTreeSet<_> = level_vertices(2).into_iter().collect();
        let expect: BTreeSet<_> = [
            pp(&[], &[]),
            pp(&[1], &[1]),
            pp(&[2], &[]),
            pp(&[1, 1], &[]),
            pp(&[], &[1, 1]),
            pp(&[], &[2]),
        ]
        .into_iter()
        .collect();
        assert_eq!(l2, expect);
    }

    #[test]
    fn branching_from_empty_and_box() {
        let got = PartitionPair::empty().branching();
        assert_eq!(got, vec![pp(&[], &[1]), pp(&[1], &[])]);

        let got: BTreeSet<_> = pp(&[1], &[]).branching().into_iter().collect();
        let expect: BTreeSet<_> = [
            pp(&[], &[]),
            pp(&[2], &[]),
            pp(&[1, 1], &[]),
            pp(&[1], &[1]),
        ]
        .into_iter()
        .collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn branching_is_level_free_with_intersection() {
        // callers intersect with the previous level
        let down: Vec<_> = pp(&[1], &[1])
            .branching()
            .into_iter()
            .filter(|u| u.in_level(1))
            .collect();
        assert_eq!(down, vec![pp(&[], &[1]), pp(&[1], &[])]);
    }

    #[test]
    fn path_counts_level_two() {
        let c = path_counts(2);
        assert_eq!(c[&pp(&[], &[])], 2);
        assert_eq!(c[&pp(&[1], &[1])], 2);
        assert_eq!(c[&pp(&[2], &[])], 1);
        assert_eq!(c[&pp(&[1, 1], &[])], 1);
        assert_eq!(c[&pp(&[], &[2])], 1);
        assert_eq!(c[&pp(&[], &[1, 1])], 1);
        let sum: u128 = c.values().map(|&v| (v as u128) * (v as u128)).sum();
        assert_eq!(sum, 12);
    }

    #[test]
    fn dimension_identity_small() {
        assert_eq!(expected_dimension(1), 2);
        assert_eq!(expected_dimension(2), 12);
        assert_eq!(expected_dimension(5), 30240);
        for n in 0..=6 {
            assert!(dimension_check(n), "dimension check failed at level {n}");
        }
    }

    #[test]
    fn branching_is_symmetric_across_levels() {
        for n in 1..=6u32 {
            let upper = level_vertices(n);
            let lower = level_vertices(n - 1);
            for v in &upper {
                for u in &lower {
                    let down = v.branching().contains(u);
                    let up = u.branching().contains(v);
                    assert_eq!(down, up, "asymmetry between {v:?} and {u:?}");
                }
            }
        }
    }

    /// Recursion-free oracle: enumerate every path by depth-first walk and
    /// compare multiset counts with the memoized recursion.
    #[test]
    fn path_counts_match_brute_force_enumeration() {
        fn walk(
            v: &PartitionPair,
            level: u32,
            target: u32,
            out: &mut BTreeMap<PartitionPair, u64>,
        ) {
            if level == target {
                *out.entry(v.clone()).or_insert(0) += 1;
                return;
            }
            for w in v.branching() {
                if w.in_level(level + 1) {
                    walk(&w, level + 1, target, out);
                }
            }
        }
        for n in 0..=5u32 {
            let mut brute = BTreeMap::new();
            walk(&PartitionPair::empty(), 0, n, &mut brute);
            assert_eq!(brute, path_counts(n));
        }
    }
}
