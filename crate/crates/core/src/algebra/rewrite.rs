//! Noncommutative rewriting over a rational-function field.
//!
//! Words over a finite generator alphabet are ordered length-lexicographically
//! (shorter first, then by generator id left to right). A rule maps a word to
//! a linear combination of strictly smaller words, so rewriting terminates.
//! Confluence is not assumed: [`complete`] runs a bounded critical-pair pass
//! that derives new rules until all overlaps resolve, and callers validate
//! the result against expected dimensions and independent oracles.

use crate::ring::{RationalFn, Registry};
use std::collections::BTreeMap;
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

pub type Gen = u8;

/// A word over the generator alphabet, ordered length-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite linear combination of words with rational-function coefficients.
#[derive(Debug, Clone, Default)]
pub struct LinComb {
    pub terms: BTreeMap<Word, RationalFn>,
}

impl LinComb {
    pub fn zero() -> LinComb {
        LinComb {
            terms: BTreeMap::new(),
        }
    }

    pub fn single(w: Word, c: RationalFn) -> LinComb {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        LinComb { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_scaled(&mut self, other: &LinComb, c: &RationalFn) {
        if c.is_zero() {
            return;
        }
        for (w, k) in &other.terms {
            let add = k.mul(c);
            match self.terms.get_mut(w) {
                Some(e) => {
                    *e = e.add(&add);
                    if e.is_zero() {
                        self.terms.remove(w);
                    }
                }
                None => {
                    if !add.is_zero() {
                        self.terms.insert(w.clone(), add);
                    }
                }
            }
        }
    }

    pub fn scale(&self, c: &RationalFn) -> LinComb {
        let mut out = LinComb::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, other: &LinComb, reg: &Arc<Registry>) -> LinComb {
        let mut out = self.clone();
        out.add_scaled(other, &RationalFn::int(reg, -1));
        out
    }

    /// Largest word in length-lex order.
    pub fn leading(&self) -> Option<(&Word, &RationalFn)> {
        self.terms.iter().next_back()
    }
}

#[derive(Debug, Clone)]
pub enum AlgebraError {
    /// The rewriting closure failed to stabilize within its bounds.
    NonConfluent {
        word: String,
    },
    DimensionMismatch {
        expected: usize,
        got: usize,
    },
    Inconsistent(String),
    Domain(String),
    Usage(String),
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::NonConfluent { word } => {
                write!(f, "rewriting closure did not stabilize at word `{word}`")
            }
            AlgebraError::DimensionMismatch { expected, got } => {
                write!(f, "basis closure has dimension {got}, expected {expected}")
            }
            AlgebraError::Inconsistent(m) => write!(f, "inconsistent system: {m}"),
            AlgebraError::Domain(m) => write!(f, "domain error: {m}"),
            AlgebraError::Usage(m) => write!(f, "usage error: {m}"),
        }
    }
}

impl std::error::Error for AlgebraError {}

/// A terminating rewriting system with leftmost-longest redex selection.
#[derive(Debug, Clone)]
pub struct RewriteSystem {
    pub registry: Arc<Registry>,
    pub rules: HashMap<Vec<Gen>, LinComb>,
    max_lhs: usize,
}

impl RewriteSystem {
    pub fn new(registry: Arc<Registry>) -> RewriteSystem {
        RewriteSystem {
            registry,
            rules: HashMap::new(),
            max_lhs: 0,
        }
    }

    fn find_redex(&self, w: &[Gen]) -> Option<(usize, usize)> {
        if self.max_lhs == 0 {
            return None;
        }
        for pos in 0..w.len() {
            let maxl = self.max_lhs.min(w.len() - pos);
            for len in (1..=maxl).rev() {
                if self.rules.contains_key(&w[pos..pos + len]) {
                    return Some((pos, len));
                }
            }
        }
        None
    }

    fn insert_rule(&mut self, lhs: Vec<Gen>, rhs: LinComb) {
        debug_assert!(
            rhs.terms.keys().all(|w| w < &Word(lhs.clone())),
            "rule not decreasing"
        );
        self.max_lhs = self.max_lhs.max(lhs.len());
        self.rules.insert(lhs, rhs);
    }

    /// Replaces the redex of `rule_lhs` at `pos` inside `w` by the rule's
    /// right-hand side. One rewriting step, no further normalization.
    fn apply_at(&self, w: &[Gen], pos: usize, rule_lhs: &[Gen]) -> LinComb {
        let rhs = &self.rules[rule_lhs];
        let mut out = LinComb::zero();
        for (t, c) in &rhs.terms {
            let mut nw = Vec::with_capacity(w.len() - rule_lhs.len() + t.len());
            nw.extend_from_slice(&w[..pos]);
            nw.extend_from_slice(&t.0);
            nw.extend_from_slice(&w[pos + rule_lhs.len()..]);
            out.add_scaled(
                &LinComb::single(Word(nw), RationalFn::one(&self.registry)),
                c,
            );
        }
        out
    }

    /// Full normal form of a word, memoized. Iterative so that long
    /// rewriting chains cannot exhaust the call stack.
    pub fn nf(&self, w: &[Gen], memo: &mut HashMap<Vec<Gen>, LinComb>) -> LinComb {
        if let Some(c) = memo.get(w) {
            return c.clone();
        }

        struct Frame {
            word: Vec<Gen>,
            children: Vec<(Vec<Gen>, RationalFn)>,
            acc: LinComb,
            next: usize,
        }

        let make_frame = |sys: &RewriteSystem, word: Vec<Gen>| -> Frame {
            match sys.find_redex(&word) {
                None => {
                    let acc = LinComb::single(Word(word.clone()), RationalFn::one(&sys.registry));
                    Frame {
                        word,
                        children: Vec::new(),
                        acc,
                        next: 0,
                    }
                }
                Some((pos, len)) => {
                    let lhs = word[pos..pos + len].to_vec();
                    let one_step = sys.apply_at(&word, pos, &lhs);
                    let children = one_step.terms.into_iter().map(|(w, c)| (w.0, c)).collect();
                    Frame {
                        word,
                        children,
                        acc: LinComb::zero(),
                        next: 0,
                    }
                }
            }
        };

        let mut stack = vec![make_frame(self, w.to_vec())];
        while let Some(top) = stack.last_mut() {
            if top.next < top.children.len() {
                let (cw, coeff) = top.children[top.next].clone();
                if let Some(sub) = memo.get(&cw) {
                    let sub = sub.clone();
                    top.acc.add_scaled(&sub, &coeff);
                    top.next += 1;
                } else if self.find_redex(&cw).is_none() {
                    let single = LinComb::single(Word(cw.clone()), RationalFn::one(&self.registry));
                    memo.insert(cw, single.clone());
                    top.acc.add_scaled(&single, &coeff);
                    top.next += 1;
                } else {
                    let f = make_frame(self, cw);
                    stack.push(f);
                }
            } else {
                memo.insert(top.word.clone(), top.acc.clone());
                stack.pop();
            }
        }
        memo.get(w).unwrap().clone()
    }

    /// Normal form of a linear combination.
    pub fn nf_comb(&self, comb: &LinComb, memo: &mut HashMap<Vec<Gen>, LinComb>) -> LinComb {
        let mut out = LinComb::zero();
        for (w, c) in &comb.terms {
            let n = self.nf(&w.0, memo);
            out.add_scaled(&n, c);
        }
        out
    }
}

/// Bounds on the completion pass.
#[derive(Debug, Clone, Copy)]
pub struct CompletionLimits {
    pub max_rules: usize,
    pub max_word_len: usize,
}

impl Default for CompletionLimits {
    fn default() -> Self {
        CompletionLimits {
            max_rules: 4000,
            max_word_len: 28,
        }
    }
}

fn render_word(gens: &[String], w: &[Gen]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.iter()
        .map(|&g| gens[g as usize].clone())
        .collect::<Vec<_>>()
        .join(".")
}

/// Directs and saturates a rule set by resolving critical pairs until all
/// overlaps rewrite to zero or a bound trips.
pub fn complete(
    registry: &Arc<Registry>,
    gens: &[String],
    raw_rules: Vec<(Vec<Gen>, LinComb)>,
    limits: CompletionLimits,
) -> Result<RewriteSystem, AlgebraError> {
    let mut sys = RewriteSystem::new(registry.clone());
    let mut memo: HashMap<Vec<Gen>, LinComb> = HashMap::new();
    let mut eqs: VecDeque<LinComb> = VecDeque::new();
    let mut pairs: VecDeque<(Vec<Gen>, Vec<Gen>)> = VecDeque::new();

    for (lhs, rhs) in raw_rules {
        let mut eq = LinComb::single(Word(lhs), RationalFn::one(registry));
        eq.add_scaled(&rhs, &RationalFn::int(registry, -1));
        eqs.push_back(eq);
    }

    loop {
        if let Some(eq) = eqs.pop_front() {
            let r = sys.nf_comb(&eq, &mut memo);
            if r.is_zero() {
                continue;
            }
            let (lead, coeff) = {
                let (w, c) = r.leading().unwrap();
                (w.clone(), c.clone())
            };
            if lead.len() > limits.max_word_len || sys.rules.len() >= limits.max_rules {
                return Err(AlgebraError::NonConfluent {
                    word: render_word(gens, &lead.0),
                });
            }
            // rule: lead -> -(rest)/coeff
            let mut rest = r.clone();
            rest.terms.remove(&lead);
            let scale = RationalFn::int(registry, -1)
                .div(&coeff)
                .expect("leading coefficient is nonzero");
            let rhs = rest.scale(&scale);

            // requeue any existing rule whose left side the new rule reduces
            let displaced: Vec<Vec<Gen>> = sys
                .rules
                .keys()
                .filter(|k| contains_subword(k, &lead.0))
                .cloned()
                .collect();
            for d in displaced {
                let old_rhs = sys.rules.remove(&d).unwrap();
                let mut eq = LinComb::single(Word(d), RationalFn::one(registry));
                eq.add_scaled(&old_rhs, &RationalFn::int(registry, -1));
                eqs.push_back(eq);
            }

            sys.insert_rule(lead.0.clone(), rhs);
            memo.clear();

            let others: Vec<Vec<Gen>> = sys.rules.keys().cloned().collect();
            for o in others {
                pairs.push_back((lead.0.clone(), o.clone()));
                if o != lead.0 {
                    pairs.push_back((o, lead.0.clone()));
                }
            }
            continue;
        }

        if let Some((l1, l2)) = pairs.pop_front() {
            if !sys.rules.contains_key(&l1) || !sys.rules.contains_key(&l2) {
                continue;
            }
            for (sup, p1, p2) in overlaps(&l1, &l2) {
                let a = sys.apply_at(&sup, p1, &l1);
                let b = sys.apply_at(&sup, p2, &l2);
                let na = sys.nf_comb(&a, &mut memo);
                let nb = sys.nf_comb(&b, &mut memo);
                let d = na.sub(&nb, registry);
                if !d.is_zero() {
                    eqs.push_back(d);
                }
            }
            continue;
        }

        break;
    }

    Ok(sys)
}

fn contains_subword(hay: &[Gen], needle: &[Gen]) -> bool {
    if needle.len() > hay.len() {
        return false;
    }
    (0..=hay.len() - needle.len()).any(|p| &hay[p..p + needle.len()] == needle)
}

/// All critical superpositions of two rule left sides: proper overlaps
/// (a suffix of `l1` equals a prefix of `l2`) and containments of `l2`
/// inside `l1`. Returns `(superword, pos1, pos2)`.
fn overlaps(l1: &[Gen], l2: &[Gen]) -> Vec<(Vec<Gen>, usize, usize)> {
    let mut out = Vec::new();
    // proper overlaps
    for s in 1..l1.len() {
        let k = l1.len() - s;
        if k >= l2.len() {
            continue;
        }
        if l1[s..] == l2[..k] {
            let mut sup = l1.to_vec();
            sup.extend_from_slice(&l2[k..]);
            out.push((sup, 0, s));
        }
    }
    // containment of l2 strictly inside l1
    if l2.len() < l1.len() {
        for p in 0..=l1.len() - l2.len() {
            if &l1[p..p + l2.len()] == l2 {
                out.push((l1.to_vec(), 0, p));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::LaurentPoly;

    fn rf_int(reg: &Arc<Registry>, n: i64) -> RationalFn {
        RationalFn::from_poly(LaurentPoly::int(reg, n))
    }

    #[test]
    fn word_order_is_length_lex() {
        assert!(Word(vec![1]) < Word(vec![0, 0]));
        assert!(Word(vec![0, 1]) < Word(vec![1, 0]));
        assert!(Word(vec![]) < Word(vec![0]));
    }

    #[test]
    fn idempotent_generator_closure() {
        // one generator g with g^2 -> g
        let reg = Registry::new(vec!["k"]);
        let rules = vec![(
            vec![0u8, 0],
            LinComb::single(Word(vec![0]), rf_int(&reg, 1)),
        )];
        let sys = complete(&reg, &["g".to_string()], rules, CompletionLimits::default()).unwrap();
        let mut memo = HashMap::new();
        let n = sys.nf(&[0, 0, 0], &mut memo);
        assert_eq!(n.terms.len(), 1);
        let (w, c) = n.leading().unwrap();
        assert_eq!(w, &Word(vec![0]));
        assert!(c.is_one());
    }

    #[test]
    fn symmetric_group_completion() {
        // s0, s1 with s_i^2 -> 1 and s1 s0 s1 -> s0 s1 s0: S3 has 6 elements
        let reg = Registry::new(vec!["k"]);
        let one = rf_int(&reg, 1);
        let rules = vec![
            (vec![0u8, 0], LinComb::single(Word(vec![]), one.clone())),
            (vec![1u8, 1], LinComb::single(Word(vec![]), one.clone())),
            (
                vec![1u8, 0, 1],
                LinComb::single(Word(vec![0, 1, 0]), one.clone()),
            ),
        ];
        let gens = vec!["s0".to_string(), "s1".to_string()];
        let sys = complete(&reg, &gens, rules, CompletionLimits::default()).unwrap();
        // count irreducible words reachable from the empty word
        let mut memo = HashMap::new();
        let mut basis = vec![Vec::<Gen>::new()];
        let mut i = 0;
        while i < basis.len() {
            for g in 0..2u8 {
                let mut w = basis[i].clone();
                w.push(g);
                let n = sys.nf(&w, &mut memo);
                for t in n.terms.keys() {
                    if !basis.contains(&t.0) {
                        basis.push(t.0.clone());
                    }
                }
            }
            i += 1;
        }
        assert_eq!(basis.len(), 6);
    }
}
