//! Finite dimensional associative algebras from presentations.
//!
//! [`compute_basis`] closes a [`Presentation`] into a [`BasisTable`]: an
//! ordered basis of irreducible words together with structure constants for
//! right multiplication by every generator. Dimension expectations act as
//! the correctness certificate for the rewriting closure.

mod presentations;
mod rewrite;
mod trace;

pub use presentations::{
    present_bmwA, present_bmwA_over, present_bmwB, present_bmwB_over, present_heckeB,
    present_heckeB_over, present_tlb, present_tlb_over,
};
pub use rewrite::{complete, AlgebraError, CompletionLimits, Gen, LinComb, RewriteSystem, Word};
pub use trace::{solve_markov_trace, trace_gram_rank, MarkovTraceFamily};

use crate::braid::BraidWord;
use crate::ring::{RationalFn, Registry};
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;
use std::sync::Mutex;

/// A finitely presented algebra: generators and directed rewrite rules with
/// linear right-hand sides. Rules must be strictly decreasing in the
/// length-lex order on words.
pub struct Presentation {
    pub name: String,
    pub gens: Vec<String>,
    pub registry: Arc<Registry>,
    pub rules: Vec<(Vec<Gen>, LinComb)>,
    pub expected_dim: Option<usize>,
    /// Named derived scalars of the instance (delta, x, ...).
    pub consts: BTreeMap<String, RationalFn>,
    /// For braid-quotient instances: image and inverse image of each braid
    /// generator index, as linear combinations of generator words.
    pub braid_images: Vec<Option<(LinComb, LinComb)>>,
    pub limits: CompletionLimits,
}

impl Presentation {
    fn validate(&self) {
        for (lhs, rhs) in &self.rules {
            assert!(
                lhs.iter().all(|&g| (g as usize) < self.gens.len()),
                "rule lhs uses undeclared generator"
            );
            let lw = Word(lhs.clone());
            for w in rhs.terms.keys() {
                assert!(
                    w.0.iter().all(|&g| (g as usize) < self.gens.len()),
                    "rule rhs uses undeclared generator"
                );
                assert!(w < &lw, "rule is not decreasing in length-lex order");
            }
        }
    }
}

/// An element in the basis of a [`BasisTable`]: sparse coefficients over
/// basis indices. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    pub coeffs: BTreeMap<usize, RationalFn>,
}

impl Element {
    pub fn zero() -> Element {
        Element {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (i, c) in &other.coeffs {
            match out.coeffs.get_mut(i) {
                Some(e) => {
                    *e = e.add(c);
                    if e.is_zero() {
                        out.coeffs.remove(i);
                    }
                }
                None => {
                    out.coeffs.insert(*i, c.clone());
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &RationalFn) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element {
            coeffs: self.coeffs.iter().map(|(i, k)| (*i, k.mul(c))).collect(),
        }
    }

    pub fn sub(&self, other: &Element, reg: &Arc<Registry>) -> Element {
        self.add(&other.scale(&RationalFn::int(reg, -1)))
    }
}

/// The closed basis of a finitely presented algebra.
pub struct BasisTable {
    pub name: String,
    pub gens: Vec<String>,
    pub registry: Arc<Registry>,
    pub words: Vec<Word>,
    pub consts: BTreeMap<String, RationalFn>,
    index: HashMap<Word, usize>,
    /// right_mul[i][g] = basis_i * gen_g expressed over the basis
    right_mul: Vec<Vec<Element>>,
    sys: RewriteSystem,
    memo: Mutex<HashMap<Vec<Gen>, LinComb>>,
    /// braid letter index -> (image, inverse image)
    braid_map: Vec<Option<(Element, Element)>>,
    /// the presentation's rules, kept for re-checks and dumps
    defining_rules: Vec<(Vec<Gen>, LinComb)>,
}

/// Builds the basis and structure constants by closing the presentation
/// under right multiplication, after saturating the rules with a bounded
/// critical-pair pass.
pub fn compute_basis(p: Presentation) -> Result<BasisTable, AlgebraError> {
    p.validate();
    let sys = complete(&p.registry, &p.gens, p.rules.clone(), p.limits)?;
    let bound = match p.expected_dim {
        Some(d) => 4 * d + 16,
        None => p.limits.max_rules,
    };

    let mut memo: HashMap<Vec<Gen>, LinComb> = HashMap::new();
    let mut words: Vec<Word> = vec![Word::empty()];
    let mut index: HashMap<Word, usize> = HashMap::new();
    index.insert(Word::empty(), 0);

    let mut right_mul: Vec<Vec<Element>> = Vec::new();
    let ngens = p.gens.len();
    let mut i = 0;
    while i < words.len() {
        let mut row = Vec::with_capacity(ngens);
        for g in 0..ngens as Gen {
            let mut w = words[i].0.clone();
            w.push(g);
            let n = sys.nf(&w, &mut memo);
            for t in n.terms.keys() {
                if !index.contains_key(t) {
                    if words.len() >= bound {
                        return Err(AlgebraError::NonConfluent {
                            word: render_gen_word(&p.gens, &t.0),
                        });
                    }
                    index.insert(t.clone(), words.len());
                    words.push(t.clone());
                }
            }
            row.push(comb_to_element(&n, &index));
        }
        right_mul.push(row);
        i += 1;
    }

    if let Some(d) = p.expected_dim {
        if words.len() != d {
            return Err(AlgebraError::DimensionMismatch {
                expected: d,
                got: words.len(),
            });
        }
    }

    let mut table = BasisTable {
        name: p.name,
        gens: p.gens,
        registry: p.registry,
        words,
        consts: p.consts,
        index,
        right_mul,
        sys,
        memo: Mutex::new(memo),
        braid_map: Vec::new(),
        defining_rules: p.rules,
    };

    let braid_map = p
        .braid_images
        .iter()
        .map(|entry| {
            entry
                .as_ref()
                .map(|(fwd, inv)| (table.elem_of_comb(fwd), table.elem_of_comb(inv)))
        })
        .collect();
    table.braid_map = braid_map;
    Ok(table)
}

fn comb_to_element(c: &LinComb, index: &HashMap<Word, usize>) -> Element {
    Element {
        coeffs: c.terms.iter().map(|(w, k)| (index[w], k.clone())).collect(),
    }
}

fn render_gen_word(gens: &[String], w: &[Gen]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.iter()
        .map(|&g| gens[g as usize].clone())
        .collect::<Vec<_>>()
        .join(".")
}

impl BasisTable {
    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn unit(&self) -> Element {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(0usize, RationalFn::one(&self.registry));
        Element { coeffs }
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(i, RationalFn::one(&self.registry));
        Element { coeffs }
    }

    pub fn word_index(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn gen_index(&self, name: &str) -> Option<Gen> {
        self.gens.iter().position(|g| g == name).map(|i| i as Gen)
    }

    pub fn constant(&self, name: &str) -> &RationalFn {
        &self.consts[name]
    }

    /// Normal form of an arbitrary generator word as an element.
    pub fn elem_of_algebra_word(&self, w: &[Gen]) -> Element {
        let mut memo = self.memo.lock().unwrap();
        let n = self.sys.nf(w, &mut memo);
        comb_to_element(&n, &self.index)
    }

    fn elem_of_comb(&self, c: &LinComb) -> Element {
        let mut memo = self.memo.lock().unwrap();
        let n = self.sys.nf_comb(c, &mut memo);
        comb_to_element(&n, &self.index)
    }

    /// Right multiplication by a generator through the structure constants.
    pub fn right_mul_gen(&self, e: &Element, g: Gen) -> Element {
        let mut out = Element::zero();
        for (i, c) in &e.coeffs {
            let row = &self.right_mul[*i][g as usize];
            out = out.add(&row.scale(c));
        }
        out
    }

    pub fn right_mul_word(&self, e: &Element, w: &[Gen]) -> Element {
        let mut acc = e.clone();
        for &g in w {
            acc = self.right_mul_gen(&acc, g);
        }
        acc
    }

    /// Bilinear product through the structure constants.
    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        let mut out = Element::zero();
        for (j, cb) in &b.coeffs {
            let prod = self.right_mul_word(a, &self.words[*j].0);
            out = out.add(&prod.scale(cb));
        }
        out
    }

    /// Image of a braid word. Inverse letters use the stored algebra
    /// inverses; letters with no image in this instance are a domain error.
    pub fn elem_of_braid_word(&self, w: &BraidWord) -> Result<Element, AlgebraError> {
        let mut acc = self.unit();
        for l in &w.letters {
            let entry = self
                .braid_map
                .get(l.index)
                .and_then(|e| e.as_ref())
                .ok_or_else(|| {
                    AlgebraError::Domain(format!(
                        "braid generator {} has no image in {}",
                        l.index, self.name
                    ))
                })?;
            let img = if l.power > 0 { &entry.0 } else { &entry.1 };
            acc = self.multiply(&acc, img);
        }
        Ok(acc)
    }

    pub fn braid_image_of(&self, letter_index: usize) -> Option<&(Element, Element)> {
        self.braid_map.get(letter_index).and_then(|e| e.as_ref())
    }

    pub fn render_element(&self, e: &Element) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        e.coeffs
            .iter()
            .map(|(i, c)| {
                format!(
                    "({}) {}",
                    c.render(),
                    render_gen_word(&self.gens, &self.words[*i].0)
                )
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn render_word(&self, i: usize) -> String {
        render_gen_word(&self.gens, &self.words[i].0)
    }

    /// Line-oriented dump of basis words and structure constants, for
    /// regression diffing.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, w) in self.words.iter().enumerate() {
            out.push_str(&format!(
                "basis {} {}\n",
                i,
                render_gen_word(&self.gens, &w.0)
            ));
        }
        for (i, row) in self.right_mul.iter().enumerate() {
            for (g, e) in row.iter().enumerate() {
                out.push_str(&format!(
                    "mul {} {} = {}\n",
                    render_gen_word(&self.gens, &self.words[i].0),
                    self.gens[g],
                    self.render_element(e)
                ));
            }
        }
        out
    }

    /// Re-checks a relation `lhs = rhs` (as generator words with
    /// coefficients) inside the finished table.
    pub fn relation_holds(&self, lhs: &LinComb, rhs: &LinComb) -> bool {
        let a = self.elem_of_comb(lhs);
        let b = self.elem_of_comb(rhs);
        a == b
    }

    /// Evaluates a linear combination of generator words by chained
    /// structure-constant multiplication, without the rewriting path.
    pub fn eval_comb_by_multiplication(&self, comb: &LinComb) -> Element {
        let mut out = Element::zero();
        for (w, c) in &comb.terms {
            let mut acc = self.unit();
            for &g in &w.0 {
                acc = self.multiply(&acc, &self.elem_of_algebra_word(&[g]));
            }
            out = out.add(&acc.scale(c));
        }
        out
    }

    /// Re-checks every defining rule as an element identity computed
    /// through multiplication. Returns the number of rules checked.
    pub fn recheck_defining_relations(&self) -> Result<usize, AlgebraError> {
        for (lhs, rhs) in &self.defining_rules {
            let l = self.eval_comb_by_multiplication(&LinComb::single(
                Word(lhs.clone()),
                RationalFn::one(&self.registry),
            ));
            let r = self.eval_comb_by_multiplication(rhs);
            if l != r {
                return Err(AlgebraError::Inconsistent(format!(
                    "defining relation fails in {}: {}",
                    self.name,
                    render_gen_word(&self.gens, lhs)
                )));
            }
        }
        // braid images invert exactly
        for pair in self.braid_map.iter().flatten() {
            let (fwd, inv) = pair;
            if self.multiply(fwd, inv) != self.unit() || self.multiply(inv, fwd) != self.unit() {
                return Err(AlgebraError::Inconsistent(format!(
                    "braid image inverse fails in {}",
                    self.name
                )));
            }
        }
        Ok(self.defining_rules.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::BraidWord;
    use crate::ring::LaurentPoly;
    use rand_chacha::ChaCha8Rng;
    use rand_core::{RngCore, SeedableRng};

    fn random_element(rng: &mut ChaCha8Rng, t: &BasisTable) -> Element {
        let mut e = Element::zero();
        for _ in 0..3 {
            let i = (rng.next_u64() % t.dim() as u64) as usize;
            let c = (rng.next_u32() % 7) as i64 - 3;
            if c != 0 {
                e = e.add(&t.basis_element(i).scale(&RationalFn::int(&t.registry, c)));
            }
        }
        e
    }

    #[test]
    fn trivial_idempotent_presentation() {
        let reg = Registry::new(vec!["k"]);
        let p = Presentation {
            name: "idem".into(),
            gens: vec!["g".into()],
            registry: reg.clone(),
            rules: vec![(
                vec![0, 0],
                LinComb::single(Word(vec![0]), RationalFn::one(&reg)),
            )],
            expected_dim: Some(2),
            consts: BTreeMap::new(),
            braid_images: vec![],
            limits: CompletionLimits::default(),
        };
        let t = compute_basis(p).unwrap();
        assert_eq!(t.dim(), 2);
    }

    #[test]
    fn hecke_b_small_dims() {
        // dim HB_n = 2^n n!
        assert_eq!(compute_basis(present_heckeB(1)).unwrap().dim(), 2);
        assert_eq!(compute_basis(present_heckeB(2)).unwrap().dim(), 8);
        assert_eq!(compute_basis(present_heckeB(3)).unwrap().dim(), 48);
    }

    #[test]
    fn hecke_quadratic_relation_in_table() {
        let t = compute_basis(present_heckeB(2)).unwrap();
        let reg = &t.registry;
        let q0 = reg.var("Q0");
        let x0 = t.gen_index("X0").unwrap();
        // X0^2 = (Q0 - 1) X0 + Q0
        let sq = t.elem_of_algebra_word(&[x0, x0]);
        let expect = t
            .basis_element(t.word_index(&Word(vec![x0])).unwrap())
            .scale(&RationalFn::from_poly(
                LaurentPoly::var(&q0).sub(&LaurentPoly::one(reg)),
            ))
            .add(&t.unit().scale(&RationalFn::var(&q0)));
        assert_eq!(sq, expect);
    }

    #[test]
    fn bmw_a_small_dims() {
        assert_eq!(compute_basis(present_bmwA(2)).unwrap().dim(), 3);
        assert_eq!(compute_basis(present_bmwA(3)).unwrap().dim(), 15);
    }

    #[test]
    fn bmw_b_small_dims() {
        assert_eq!(compute_basis(present_bmwB(1)).unwrap().dim(), 2);
        assert_eq!(compute_basis(present_bmwB(2)).unwrap().dim(), 12);
    }

    #[test]
    fn bmw_relations_hold_in_table() {
        let t = compute_basis(present_bmwB(2)).unwrap();
        let x1 = t.gen_index("X1").unwrap();
        let e1 = t.gen_index("e1").unwrap();
        let y = t.gen_index("Y").unwrap();
        let lam = t.constant("lam").clone();

        // X1 e1 = e1 X1 = lam e1
        let xe = t.elem_of_algebra_word(&[x1, e1]);
        let ex = t.elem_of_algebra_word(&[e1, x1]);
        let le = t.elem_of_algebra_word(&[e1]).scale(&lam);
        assert_eq!(xe, le);
        assert_eq!(ex, le);

        // Y X1 Y e1 = e1
        let lhs = t.elem_of_algebra_word(&[y, x1, y, e1]);
        let rhs = t.elem_of_algebra_word(&[e1]);
        assert_eq!(lhs, rhs);

        // generator inverses really invert
        for (i, pair) in [(0usize, y), (1usize, x1)] {
            let (fwd, inv) = t.braid_image_of(i).unwrap().clone();
            let _ = pair;
            assert_eq!(t.multiply(&fwd, &inv), t.unit());
            assert_eq!(t.multiply(&inv, &fwd), t.unit());
        }
    }

    #[test]
    fn y_squared_example() {
        // [Y, Y] maps to q1 Y + q^-1 1
        let t = compute_basis(present_bmwB(2)).unwrap();
        let w = BraidWord::parse("y y", 2).unwrap();
        let img = t.elem_of_braid_word(&w).unwrap();
        let reg = &t.registry;
        let q1 = reg.var("q1");
        let q = reg.var("q");
        let yidx = t
            .word_index(&Word(vec![t.gen_index("Y").unwrap()]))
            .unwrap();
        let expect = t
            .basis_element(yidx)
            .scale(&RationalFn::var(&q1))
            .add(&t.unit().scale(&RationalFn::var_pow(&q, -1)));
        assert_eq!(img, expect);
    }

    #[test]
    fn unit_multiplication() {
        let t = compute_basis(present_bmwB(2)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let a = random_element(&mut rng, &t);
            assert_eq!(t.multiply(&t.unit(), &a), a);
            assert_eq!(t.multiply(&a, &t.unit()), a);
        }
    }

    #[test]
    fn e1_x1_structure_example() {
        // in the cylinder BMW algebra on 2 strands: e1 X1 = lam e1
        let t = compute_basis(present_bmwB(2)).unwrap();
        let e1 = t.gen_index("e1").unwrap();
        let x1 = t.gen_index("X1").unwrap();
        let a = t.elem_of_algebra_word(&[e1]);
        let b = t.elem_of_algebra_word(&[x1]);
        let prod = t.multiply(&a, &b);
        assert_eq!(prod, a.scale(t.constant("lam")));
    }

    #[test]
    fn associativity_random_triples() {
        for p in [present_bmwB(2), present_heckeB(2)] {
            let t = compute_basis(p).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(17);
            for _ in 0..100 {
                let a = random_element(&mut rng, &t);
                let b = random_element(&mut rng, &t);
                let c = random_element(&mut rng, &t);
                let ab_c = t.multiply(&t.multiply(&a, &b), &c);
                let a_bc = t.multiply(&a, &t.multiply(&b, &c));
                assert_eq!(ab_c, a_bc);
            }
        }
    }

    #[test]
    fn braid_image_invariant_under_shuffle() {
        let t = compute_basis(present_bmwB(2)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..100 {
            let base = BraidWord::identity(2).relation_shuffle(6, rng.next_u64());
            let shuffled = base.relation_shuffle(10, rng.next_u64());
            let a = t.elem_of_braid_word(&base).unwrap();
            let b = t.elem_of_braid_word(&shuffled).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn tlb_presentation_dims() {
        assert_eq!(compute_basis(present_tlb(1)).unwrap().dim(), 2);
        assert_eq!(compute_basis(present_tlb(2)).unwrap().dim(), 6);
    }
}
