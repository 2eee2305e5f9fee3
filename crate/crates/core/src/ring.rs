//! Exact arithmetic in multivariate Laurent polynomials and rational
//! functions over the rationals.
//!
//! Every algebraic computation in this crate is generic over this field.
//! Values are immutable after construction and all operations are pure, so
//! they may be shared freely across threads.
//!
//! Terms are kept in a canonical graded-lexicographic order over the
//! variable registry, with no zero coefficients stored. Rational functions
//! are normalized so that the denominator is primitive (integer content 1,
//! minimal exponent 0 in every variable, positive leading coefficient).
//! Equality of rational functions is decided by cross multiplication and
//! never uses floating point. No full multivariate gcd is attempted; the
//! normalization removes monomial and integer content only, plus exact
//! divisions when they happen to succeed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// An immutable set of variable names. All polynomials carry a shared
/// handle to the registry they were built over; mixing registries is a
/// usage error.
#[derive(Debug, PartialEq, Eq)]
pub struct Registry {
    names: Vec<String>,
}

impl Registry {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Arc<Registry> {
        let names: Vec<String> = names.into_iter().map(|s| s.into()).collect();
        for (i, a) in names.iter().enumerate() {
            for b in names.iter().skip(i + 1) {
                assert!(a != b, "duplicate variable name `{a}` in registry");
            }
        }
        Arc::new(Registry { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Returns the variable handle for `name`, panicking if absent.
    pub fn var(self: &Arc<Self>, name: &str) -> Var {
        Var {
            reg: self.clone(),
            index: self
                .index_of(name)
                .unwrap_or_else(|| panic!("variable `{name}` not in registry")),
        }
    }

    /// A new registry extending this one with fresh names appended at the
    /// end. Polynomials over the old registry lift losslessly.
    pub fn extend<S: Into<String>>(self: &Arc<Self>, fresh: Vec<S>) -> Arc<Registry> {
        let mut names = self.names.clone();
        for f in fresh {
            names.push(f.into());
        }
        Registry::new(names)
    }
}

pub fn same_registry(a: &Arc<Registry>, b: &Arc<Registry>) -> bool {
    Arc::ptr_eq(a, b) || a.names == b.names
}

/// A named variable in a registry.
#[derive(Debug, Clone)]
pub struct Var {
    reg: Arc<Registry>,
    index: usize,
}

impl Var {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn name(&self) -> &str {
        &self.reg.names[self.index]
    }

    pub fn registry(&self) -> &Arc<Registry> {
        &self.reg
    }
}

/// Exponent vector of a monomial; entries may be negative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<i32>);

impl Mono {
    fn one(nvars: usize) -> Mono {
        Mono(vec![0; nvars])
    }

    fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    fn total_degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }
}

/// Graded lex: compare total degree first, then exponents left to right.
impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => self.0.cmp(&other.0),
            ord => ord,
        }
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A multivariate Laurent polynomial with exact rational coefficients.
#[derive(Debug, Clone)]
pub struct LaurentPoly {
    reg: Arc<Registry>,
    terms: BTreeMap<Mono, BigRational>,
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        assert!(
            same_registry(&self.reg, &other.reg),
            "registry mismatch in polynomial comparison"
        );
        self.terms == other.terms
    }
}

impl Eq for LaurentPoly {}

impl LaurentPoly {
    pub fn zero(reg: &Arc<Registry>) -> LaurentPoly {
        LaurentPoly {
            reg: reg.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(reg: &Arc<Registry>) -> LaurentPoly {
        LaurentPoly::constant(reg, BigRational::one())
    }

    pub fn constant(reg: &Arc<Registry>, c: BigRational) -> LaurentPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::one(reg.len()), c);
        }
        LaurentPoly {
            reg: reg.clone(),
            terms,
        }
    }

    pub fn int(reg: &Arc<Registry>, n: i64) -> LaurentPoly {
        LaurentPoly::constant(reg, BigRational::from_integer(BigInt::from(n)))
    }

    /// The monomial `v^power`.
    pub fn var_pow(v: &Var, power: i32) -> LaurentPoly {
        let mut exps = vec![0; v.reg.len()];
        exps[v.index] = power;
        let mut terms = BTreeMap::new();
        terms.insert(Mono(exps), BigRational::one());
        LaurentPoly {
            reg: v.reg.clone(),
            terms,
        }
    }

    pub fn var(v: &Var) -> LaurentPoly {
        LaurentPoly::var_pow(v, 1)
    }

    pub fn monomial(reg: &Arc<Registry>, exps: Vec<i32>, coeff: BigRational) -> LaurentPoly {
        assert_eq!(exps.len(), reg.len());
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(Mono(exps), coeff);
        }
        LaurentPoly {
            reg: reg.clone(),
            terms,
        }
    }

    pub fn registry(&self) -> &Arc<Registry> {
        &self.reg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.is_one() && c.is_one())
                .unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
            || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigRational)> {
        self.terms.iter()
    }

    /// Leading term in graded lex order.
    pub fn leading(&self) -> Option<(&Mono, &BigRational)> {
        self.terms.iter().next_back()
    }

    fn check_reg(&self, other: &LaurentPoly) {
        assert!(
            same_registry(&self.reg, &other.reg),
            "registry mismatch in polynomial arithmetic"
        );
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        self.check_reg(other);
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let entry = terms.entry(m.clone()).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(m);
            }
        }
        LaurentPoly {
            reg: self.reg.clone(),
            terms,
        }
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            reg: self.reg.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        self.check_reg(other);
        let mut terms: BTreeMap<Mono, BigRational> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                let entry = terms.entry(m).or_insert_with(BigRational::zero);
                *entry += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPoly {
            reg: self.reg.clone(),
            terms,
        }
    }

    pub fn scale(&self, c: &BigRational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(&self.reg);
        }
        LaurentPoly {
            reg: self.reg.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Multiplies by the monomial with the given exponent vector.
    fn shift(&self, shift: &[i32]) -> LaurentPoly {
        LaurentPoly {
            reg: self.reg.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    (
                        Mono(m.0.iter().zip(shift).map(|(a, b)| a + b).collect()),
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    /// The content of the polynomial: a rational `r` and exponent vector `e`
    /// such that `self = r * x^e * primitive` with `primitive` having
    /// integer coefficients of gcd 1, minimal exponent 0 in each variable,
    /// and positive leading coefficient.
    fn content(&self) -> Option<(BigRational, Vec<i32>)> {
        if self.terms.is_empty() {
            return None;
        }
        let nv = self.reg.len();
        let mut min_exp = vec![i32::MAX; nv];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                min_exp[i] = min_exp[i].min(e);
            }
        }
        // gcd of numerators over lcm of denominators
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut r = BigRational::new(num_gcd, den_lcm);
        // sign convention: leading coefficient of the primitive part positive
        let lead = self.terms.iter().next_back().unwrap().1;
        if lead.is_negative() {
            r = -r;
        }
        Some((r, min_exp))
    }

    /// Writes `self` as `r * x^e * primitive()`; returns the primitive part.
    fn primitive_part(&self) -> (BigRational, Vec<i32>, LaurentPoly) {
        match self.content() {
            None => (
                BigRational::one(),
                vec![0; self.reg.len()],
                LaurentPoly::zero(&self.reg),
            ),
            Some((r, e)) => {
                let inv_shift: Vec<i32> = e.iter().map(|x| -x).collect();
                let scaled = self.shift(&inv_shift).scale(&r.recip());
                (r, e, scaled)
            }
        }
    }

    /// Exact division; returns `None` when `other` does not divide `self`
    /// in the Laurent polynomial ring.
    pub fn exact_div(&self, other: &LaurentPoly) -> Option<LaurentPoly> {
        self.check_reg(other);
        assert!(!other.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(LaurentPoly::zero(&self.reg));
        }
        let (dm, dc) = other.leading().unwrap();
        let mut rem = self.clone();
        let mut quo: BTreeMap<Mono, BigRational> = BTreeMap::new();
        let step_bound = self.terms.len() * (other.terms.len() + 1) + 16;
        for _ in 0..step_bound {
            if rem.is_zero() {
                return Some(LaurentPoly {
                    reg: self.reg.clone(),
                    terms: quo,
                });
            }
            let (rm, rc) = rem.leading().unwrap();
            let qm = Mono(rm.0.iter().zip(&dm.0).map(|(a, b)| a - b).collect());
            let qc = rc / dc;
            let mut t = BTreeMap::new();
            t.insert(qm.clone(), qc.clone());
            let factor = LaurentPoly {
                reg: self.reg.clone(),
                terms: t,
            };
            rem = rem.sub(&factor.mul(other));
            quo.insert(qm, qc);
        }
        // Laurent division always terminates or fails to be exact; the
        // bound catches non-divisibility (remainder degree cycling).
        if rem.is_zero() {
            Some(LaurentPoly {
                reg: self.reg.clone(),
                terms: quo,
            })
        } else {
            None
        }
    }

    /// Substitutes variables by rational functions. Unmapped variables stay.
    pub fn substitute(
        &self,
        bindings: &BTreeMap<usize, RationalFn>,
    ) -> Result<RationalFn, RingError> {
        let target_reg = bindings
            .values()
            .next()
            .map(|r| r.num.reg.clone())
            .unwrap_or_else(|| self.reg.clone());
        let mut acc = RationalFn::zero(&target_reg);
        for (m, c) in &self.terms {
            let mut term = RationalFn::constant(&target_reg, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let base = match bindings.get(&i) {
                    Some(r) => r.clone(),
                    None => {
                        let v = Var {
                            reg: target_reg.clone(),
                            index: target_reg
                                .index_of(&self.reg.names[i])
                                .expect("variable missing from substitution target registry"),
                        };
                        RationalFn::from_poly(LaurentPoly::var(&v))
                    }
                };
                let p = base.pow(e)?;
                term = term.mul(&p);
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Lifts onto an extended registry whose first variables coincide with
    /// this polynomial's registry.
    pub fn lift(&self, bigger: &Arc<Registry>) -> LaurentPoly {
        assert!(bigger.len() >= self.reg.len());
        for (i, n) in self.reg.names.iter().enumerate() {
            assert_eq!(n, &bigger.names[i], "registry extension mismatch");
        }
        let pad = bigger.len() - self.reg.len();
        LaurentPoly {
            reg: bigger.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.extend(std::iter::repeat_n(0, pad));
                    (Mono(e), c.clone())
                })
                .collect(),
        }
    }

    /// Canonical text rendering: terms sorted descending in the canonical
    /// order, exponents in caret notation (`q^-1`).
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mono = render_mono(&self.reg, m);
            if mono.is_empty() {
                out.push_str(&render_rat(&abs));
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&render_rat(&abs));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

fn poly_transfer_constantish(p: &LaurentPoly, to: &Arc<Registry>) -> LaurentPoly {
    assert!(p.is_constant(), "no shared variables and not constant");
    let c = p
        .terms()
        .next()
        .map(|(_, c)| c.clone())
        .unwrap_or_else(BigRational::zero);
    LaurentPoly::constant(to, c)
}

fn render_rat(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn render_mono(reg: &Registry, m: &Mono) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if e == 1 {
            parts.push(reg.names[i].clone());
        } else {
            parts.push(format!("{}^{}", reg.names[i], e));
        }
    }
    parts.join("*")
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Errors from ring operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingError {
    /// A denominator became identically zero.
    ZeroDenominator,
}

impl fmt::Display for RingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingError::ZeroDenominator => write!(f, "denominator is identically zero"),
        }
    }
}

impl std::error::Error for RingError {}

/// A rational function `num/den` over a registry.
///
/// The denominator is kept primitive. Equality is by cross multiplication,
/// so `(1-t^4)/(1-t^2)` equals `1+t^2` even though the representations
/// differ.
#[derive(Debug, Clone)]
pub struct RationalFn {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFn {
    pub fn zero(reg: &Arc<Registry>) -> RationalFn {
        RationalFn {
            num: LaurentPoly::zero(reg),
            den: LaurentPoly::one(reg),
        }
    }

    pub fn one(reg: &Arc<Registry>) -> RationalFn {
        RationalFn {
            num: LaurentPoly::one(reg),
            den: LaurentPoly::one(reg),
        }
    }

    pub fn int(reg: &Arc<Registry>, n: i64) -> RationalFn {
        RationalFn::from_poly(LaurentPoly::int(reg, n))
    }

    pub fn constant(reg: &Arc<Registry>, c: BigRational) -> RationalFn {
        RationalFn::from_poly(LaurentPoly::constant(reg, c))
    }

    pub fn from_poly(p: LaurentPoly) -> RationalFn {
        let reg = p.reg.clone();
        RationalFn {
            num: p,
            den: LaurentPoly::one(&reg),
        }
    }

    pub fn var(v: &Var) -> RationalFn {
        RationalFn::from_poly(LaurentPoly::var(v))
    }

    pub fn var_pow(v: &Var, e: i32) -> RationalFn {
        RationalFn::from_poly(LaurentPoly::var_pow(v, e))
    }

    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<RationalFn, RingError> {
        if den.is_zero() {
            return Err(RingError::ZeroDenominator);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: LaurentPoly, den: LaurentPoly) -> RationalFn {
        let reg = num.reg.clone();
        if num.is_zero() {
            return RationalFn::zero(&reg);
        }
        // opportunistic exact division keeps denominators from stacking up
        let (num, den) = if den.is_one() {
            (num, den)
        } else if let Some(q) = num.exact_div(&den) {
            (q, LaurentPoly::one(&reg))
        } else {
            (num, den)
        };
        let (dr, de, dprim) = den.primitive_part();
        // divide num by the removed content r * x^e
        let inv_shift: Vec<i32> = de.iter().map(|x| -x).collect();
        let num = num.shift(&inv_shift).scale(&dr.recip());
        RationalFn { num, den: dprim }
    }

    pub fn registry(&self) -> &Arc<Registry> {
        &self.num.reg
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn add(&self, other: &RationalFn) -> RationalFn {
        self.num.check_reg(&other.num);
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::normalized(self.num.add(&other.num), self.den.clone());
        }
        // try to reuse whichever denominator is a multiple of the other
        if let Some(m) = other.den.exact_div(&self.den) {
            return Self::normalized(self.num.mul(&m).add(&other.num), other.den.clone());
        }
        if let Some(m) = self.den.exact_div(&other.den) {
            return Self::normalized(self.num.add(&other.num.mul(&m)), self.den.clone());
        }
        Self::normalized(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> RationalFn {
        RationalFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RationalFn) -> RationalFn {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RationalFn) -> RationalFn {
        self.num.check_reg(&other.num);
        if self.is_zero() || other.is_zero() {
            return RationalFn::zero(&self.num.reg);
        }
        // cancel across the two fractions before multiplying out
        let (a, d) = match self.num.exact_div(&other.den) {
            Some(q) => (q, LaurentPoly::one(&self.num.reg)),
            None => (self.num.clone(), other.den.clone()),
        };
        let (c, b) = match other.num.exact_div(&self.den) {
            Some(q) => (q, LaurentPoly::one(&self.num.reg)),
            None => (other.num.clone(), self.den.clone()),
        };
        Self::normalized(a.mul(&c), b.mul(&d))
    }

    pub fn div(&self, other: &RationalFn) -> Result<RationalFn, RingError> {
        if other.is_zero() {
            return Err(RingError::ZeroDenominator);
        }
        Ok(self.mul(&RationalFn {
            num: other.den.clone(),
            den: other.num.clone(),
        }))
    }

    pub fn recip(&self) -> Result<RationalFn, RingError> {
        if self.is_zero() {
            return Err(RingError::ZeroDenominator);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: i32) -> Result<RationalFn, RingError> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut acc = RationalFn::one(&self.num.reg);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Exact equality by cross multiplication.
    pub fn rf_equal(&self, other: &RationalFn) -> bool {
        self.num.check_reg(&other.num);
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    /// Substitutes variables (by registry index) with rational functions
    /// over a possibly different registry. All bound values must share one
    /// registry; unbound variables must exist in the target registry.
    pub fn substitute(
        &self,
        bindings: &BTreeMap<usize, RationalFn>,
    ) -> Result<RationalFn, RingError> {
        let n = self.num.substitute(bindings)?;
        let d = self.den.substitute(bindings)?;
        if d.is_zero() {
            return Err(RingError::ZeroDenominator);
        }
        n.div(&d)
    }

    pub fn lift(&self, bigger: &Arc<Registry>) -> RationalFn {
        RationalFn {
            num: self.num.lift(bigger),
            den: self.den.lift(bigger),
        }
    }

    /// Re-expresses the value over another registry by matching variable
    /// names. Every variable that actually occurs must exist in `to`.
    pub fn transfer(&self, to: &Arc<Registry>) -> RationalFn {
        let from = self.registry().clone();
        let bindings: BTreeMap<usize, RationalFn> = from
            .names()
            .iter()
            .enumerate()
            .filter_map(|(i, n)| to.index_of(n).map(|_| (i, RationalFn::var(&to.var(n)))))
            .collect();
        if bindings.is_empty() {
            let num = poly_transfer_constantish(&self.num, to);
            let den = poly_transfer_constantish(&self.den, to);
            return RationalFn::new(num, den).expect("registry transfer");
        }
        self.substitute(&bindings).expect("registry transfer")
    }

    pub fn render(&self) -> String {
        if self.den.is_one() {
            self.num.render()
        } else {
            format!("({})/({})", self.num.render(), self.den.render())
        }
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl PartialEq for RationalFn {
    fn eq(&self, other: &Self) -> bool {
        self.rf_equal(other)
    }
}

impl Eq for RationalFn {}
