//! The cylinder Temperley-Lieb algebra as a diagram algebra: noncrossing
//! matchings of `n` top and `n` bottom points with blob marks on
//! wall-exposed arcs.
//!
//! Points live on a circle: bottom points `b1..bn` at coordinates `0..n-1`
//! (left to right), top points `t1..tn` at `2n-1..n` (so `t1 = 2n-1`), with
//! the wall sitting in the gap between `t1` and `b1`. A chord separates an
//! arc from the wall exactly when both of the arc's endpoints lie strictly
//! inside the chord's sorted interval, so blob legality is a pair of strict
//! inequalities.
//!
//! Composition stacks diagrams, removes closed loops (factor `c`, or
//! `d^(k-1) cp` when the loop carries `k >= 1` blobs) and merges blobs on a
//! surviving arc with factor `d` each. The annular trace closes `t_i` to
//! `b_i` and weighs loops by winding class: `zw`/`zb` for loops that wind
//! the axis, `c`/`cp` for contractible ones, with the same `d` rule for
//! extra blobs.

use crate::braid::BraidWord;
use crate::ring::{LaurentPoly, RationalFn, Registry, Var};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// A blob diagram on `n` strands.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlobDiagram {
    pub n: usize,
    /// Arcs as sorted coordinate pairs, sorted by first coordinate.
    arcs: Vec<(u8, u8)>,
    /// Blob marks, aligned with `arcs`.
    blobs: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TlbError {
    Usage(String),
    Domain(String),
}

impl fmt::Display for TlbError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TlbError::Usage(m) => write!(f, "usage error: {m}"),
            TlbError::Domain(m) => write!(f, "domain error: {m}"),
        }
    }
}

impl std::error::Error for TlbError {}

fn bottom_coord(strand: usize) -> u8 {
    strand as u8
}

fn top_coord(n: usize, strand: usize) -> u8 {
    (2 * n - 1 - strand) as u8
}

impl BlobDiagram {
    fn from_arcs(n: usize, mut pairs: Vec<((u8, u8), bool)>) -> BlobDiagram {
        for ((a, b), _) in pairs.iter_mut() {
            if a > b {
                std::mem::swap(a, b);
            }
        }
        pairs.sort();
        let arcs: Vec<(u8, u8)> = pairs.iter().map(|(p, _)| *p).collect();
        let blobs = pairs.iter().map(|(_, b)| *b).collect();
        let d = BlobDiagram { n, arcs, blobs };
        debug_assert!(d.is_noncrossing(), "crossing arcs in {d:?}");
        debug_assert!(d.blobs_legal(), "blob on covered arc in {d:?}");
        d
    }

    /// The identity matching.
    pub fn identity(n: usize) -> BlobDiagram {
        BlobDiagram::from_arcs(
            n,
            (0..n)
                .map(|j| ((bottom_coord(j), top_coord(n, j)), false))
                .collect(),
        )
    }

    /// The identity matching with a blob on strand 1.
    pub fn e0(n: usize) -> BlobDiagram {
        assert!(n >= 1);
        BlobDiagram::from_arcs(
            n,
            (0..n)
                .map(|j| ((bottom_coord(j), top_coord(n, j)), j == 0))
                .collect(),
        )
    }

    /// The cup-cap generator on strands `i`, `i+1` (1-based, `1 <= i < n`).
    pub fn e(n: usize, i: usize) -> BlobDiagram {
        assert!((1..n).contains(&i));
        let mut pairs = Vec::new();
        pairs.push(((bottom_coord(i - 1), bottom_coord(i)), false));
        pairs.push(((top_coord(n, i), top_coord(n, i - 1)), false));
        for j in 0..n {
            if j != i - 1 && j != i {
                pairs.push(((bottom_coord(j), top_coord(n, j)), false));
            }
        }
        BlobDiagram::from_arcs(n, pairs)
    }

    pub fn arcs(&self) -> &[(u8, u8)] {
        &self.arcs
    }

    pub fn blob_on(&self, k: usize) -> bool {
        self.blobs[k]
    }

    fn is_noncrossing(&self) -> bool {
        for (i, &(a, b)) in self.arcs.iter().enumerate() {
            for &(c, d) in self.arcs.iter().skip(i + 1) {
                let crossing = (a < c && c < b && b < d) || (c < a && a < d && d < b);
                if crossing {
                    return false;
                }
            }
        }
        true
    }

    /// An arc is wall-exposed iff no other arc separates it from the wall
    /// gap between `t1` and `b1`.
    pub fn arc_exposed(&self, k: usize) -> bool {
        let (a, b) = self.arcs[k];
        !self
            .arcs
            .iter()
            .enumerate()
            .any(|(j, &(c, d))| j != k && c < a && b < d)
    }

    fn blobs_legal(&self) -> bool {
        (0..self.arcs.len()).all(|k| !self.blobs[k] || self.arc_exposed(k))
    }

    /// Text notation: point pairs with `t`/`b` labels, blobbed arcs
    /// suffixed `*`.
    pub fn render(&self) -> String {
        let name = |p: u8| -> String {
            let p = p as usize;
            if p < self.n {
                format!("b{}", p + 1)
            } else {
                format!("t{}", 2 * self.n - p)
            }
        };
        let mut parts = Vec::new();
        for (k, &(a, b)) in self.arcs.iter().enumerate() {
            let star = if self.blobs[k] { "*" } else { "" };
            parts.push(format!("{}-{}{}", name(a), name(b), star));
        }
        parts.join(" ")
    }

    fn partner_table(&self) -> Vec<(u8, usize)> {
        let mut t = vec![(0u8, 0usize); 2 * self.n];
        for (k, &(a, b)) in self.arcs.iter().enumerate() {
            t[a as usize] = (b, k);
            t[b as usize] = (a, k);
        }
        t
    }
}

/// Loop and merge bookkeeping from a composition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ComposeFactors {
    /// closed loops with no blob
    pub plain_loops: usize,
    /// closed loops with at least one blob
    pub blob_loops: usize,
    /// total exponent of the blob-merge factor `d`
    pub d_power: usize,
}

/// Stacks `a` over `b` and removes closed loops. Returns the multiplicative
/// bookkeeping and the resulting diagram.
pub fn compose_raw(a: &BlobDiagram, b: &BlobDiagram) -> (ComposeFactors, BlobDiagram) {
    assert_eq!(a.n, b.n, "strand count mismatch");
    let n = a.n;
    let pa = a.partner_table();
    let pb = b.partner_table();

    // node encoding: (side, coord); side 0 = a (top factor), 1 = b
    let glue = |side: usize, p: u8| -> Option<(usize, u8)> {
        if side == 0 && (p as usize) < n {
            // a's bottom strand j meets b's top strand j
            Some((1, top_coord(n, p as usize)))
        } else if side == 1 && (p as usize) >= n {
            Some((0, bottom_coord(2 * n - 1 - p as usize)))
        } else {
            None
        }
    };

    let mut visited = vec![[false; 2]; 2 * n];
    let mut result_pairs: Vec<((u8, u8), bool)> = Vec::new();
    let mut factors = ComposeFactors::default();

    // external endpoints of the composite: a's top and b's bottom
    let externals: Vec<(usize, u8)> = ((n..2 * n).map(|p| (0usize, p as u8)))
        .chain((0..n).map(|p| (1usize, p as u8)))
        .collect();

    for &(side0, p0) in &externals {
        if visited[p0 as usize][side0] {
            continue;
        }
        let (mut side, mut p) = (side0, p0);
        let mut blobs = 0usize;
        let end;
        loop {
            visited[p as usize][side] = true;
            let (q, arc) = if side == 0 {
                pa[p as usize]
            } else {
                pb[p as usize]
            };
            if if side == 0 {
                a.blobs[arc]
            } else {
                b.blobs[arc]
            } {
                blobs += 1;
            }
            visited[q as usize][side] = true;
            match glue(side, q) {
                Some((s2, p2)) => {
                    side = s2;
                    p = p2;
                }
                None => {
                    end = (side, q);
                    break;
                }
            }
        }
        debug_assert_ne!((side0, p0), end, "path of length zero");
        if blobs >= 2 {
            factors.d_power += blobs - 1;
        }
        result_pairs.push(((p0, end.1), blobs >= 1));
    }

    // remaining points belong to closed loops
    for start in 0..2 * n {
        for side0 in 0..2usize {
            if visited[start][side0] {
                continue;
            }
            let (mut side, mut p) = (side0, start as u8);
            let mut blobs = 0usize;
            while !visited[p as usize][side] {
                visited[p as usize][side] = true;
                let (q, arc) = if side == 0 {
                    pa[p as usize]
                } else {
                    pb[p as usize]
                };
                if if side == 0 {
                    a.blobs[arc]
                } else {
                    b.blobs[arc]
                } {
                    blobs += 1;
                }
                visited[q as usize][side] = true;
                let (s2, p2) = glue(side, q).expect("loop points are internal");
                side = s2;
                p = p2;
            }
            if blobs == 0 {
                factors.plain_loops += 1;
            } else {
                factors.blob_loops += 1;
                factors.d_power += blobs - 1;
            }
        }
    }

    (factors, BlobDiagram::from_arcs(n, result_pairs))
}

/// Parameter bundle for the diagram algebra: loop weights and, for the
/// annular trace, winding weights.
#[derive(Debug, Clone)]
pub struct TlbParams {
    pub registry: Arc<Registry>,
    pub c: RationalFn,
    pub cp: RationalFn,
    pub d: RationalFn,
    pub zw: RationalFn,
    pub zb: RationalFn,
}

impl TlbParams {
    /// Fully symbolic parameters over the registry `[c, cp, d, zw, zb]`.
    pub fn symbolic() -> TlbParams {
        let reg = Registry::new(vec!["c", "cp", "d", "zw", "zb"]);
        TlbParams {
            c: RationalFn::var(&reg.var("c")),
            cp: RationalFn::var(&reg.var("cp")),
            d: RationalFn::var(&reg.var("d")),
            zw: RationalFn::var(&reg.var("zw")),
            zb: RationalFn::var(&reg.var("zb")),
            registry: reg,
        }
    }

    fn compose_scalar(&self, f: &ComposeFactors) -> RationalFn {
        let mut s = RationalFn::one(&self.registry);
        for _ in 0..f.plain_loops {
            s = s.mul(&self.c);
        }
        for _ in 0..f.blob_loops {
            s = s.mul(&self.cp);
        }
        for _ in 0..f.d_power {
            s = s.mul(&self.d);
        }
        s
    }
}

/// Weighted composition: scalar times result diagram.
pub fn compose(a: &BlobDiagram, b: &BlobDiagram, params: &TlbParams) -> (RationalFn, BlobDiagram) {
    let (f, d) = compose_raw(a, b);
    (params.compose_scalar(&f), d)
}

/// An element of the diagram algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct TlbElement {
    pub n: usize,
    pub coeffs: BTreeMap<BlobDiagram, RationalFn>,
}

impl TlbElement {
    pub fn zero(n: usize) -> TlbElement {
        TlbElement {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_diagram(d: BlobDiagram, c: RationalFn) -> TlbElement {
        let n = d.n;
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(d, c);
        }
        TlbElement { n, coeffs }
    }

    pub fn unit(n: usize, params: &TlbParams) -> TlbElement {
        TlbElement::from_diagram(BlobDiagram::identity(n), RationalFn::one(&params.registry))
    }

    pub fn add(&self, other: &TlbElement) -> TlbElement {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (d, c) in &other.coeffs {
            match out.coeffs.get_mut(d) {
                Some(e) => {
                    *e = e.add(c);
                    if e.is_zero() {
                        out.coeffs.remove(d);
                    }
                }
                None => {
                    out.coeffs.insert(d.clone(), c.clone());
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &RationalFn) -> TlbElement {
        if c.is_zero() {
            return TlbElement::zero(self.n);
        }
        TlbElement {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .map(|(d, k)| (d.clone(), k.mul(c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &TlbElement, params: &TlbParams) -> TlbElement {
        assert_eq!(self.n, other.n);
        let mut out = TlbElement::zero(self.n);
        for (da, ca) in &self.coeffs {
            for (db, cb) in &other.coeffs {
                let (s, d) = compose(da, db, params);
                out = out.add(&TlbElement::from_diagram(d, s.mul(ca).mul(cb)));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn render(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|(d, c)| format!("({}) [{}]", c.render(), d.render()))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// All valid blob diagrams on `n` strands in a deterministic order.
pub fn enumerate_diagrams(n: usize) -> Vec<BlobDiagram> {
    assert!(n <= 6, "diagram enumeration bounded to n <= 6");
    if n == 0 {
        return vec![BlobDiagram {
            n: 0,
            arcs: Vec::new(),
            blobs: Vec::new(),
        }];
    }
    let mut out = Vec::new();
    for m in noncrossing_matchings(2 * n) {
        let plain = BlobDiagram::from_arcs(n, m.iter().map(|&p| (p, false)).collect());
        let exposed: Vec<usize> = (0..plain.arcs.len())
            .filter(|&k| plain.arc_exposed(k))
            .collect();
        for mask in 0..(1usize << exposed.len()) {
            let mut blobs = vec![false; plain.arcs.len()];
            for (bit, &k) in exposed.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    blobs[k] = true;
                }
            }
            out.push(BlobDiagram {
                n,
                arcs: plain.arcs.clone(),
                blobs,
            });
        }
    }
    out.sort();
    out
}

/// Noncrossing perfect matchings of `m` circle points by interval
/// recursion: the first point pairs with an odd-offset point, splitting
/// the rest into two independent intervals.
fn noncrossing_matchings(m: usize) -> Vec<Vec<(u8, u8)>> {
    fn rec(points: &[u8]) -> Vec<Vec<(u8, u8)>> {
        if points.is_empty() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        let first = points[0];
        for k in (1..points.len()).step_by(2) {
            let inner = &points[1..k];
            let outer = &points[k + 1..];
            for mi in rec(inner) {
                for mo in rec(outer) {
                    let mut v = vec![(first, points[k])];
                    v.extend(mi.iter().copied());
                    v.extend(mo.iter().copied());
                    out.push(v);
                }
            }
        }
        out
    }
    rec(&(0..m as u8).collect::<Vec<_>>())
}

/// The annular closure trace, normalized so the identity diagram has
/// trace 1.
pub fn tlb_trace(x: &TlbElement, params: &TlbParams) -> RationalFn {
    let mut acc = RationalFn::zero(&params.registry);
    for (d, c) in &x.coeffs {
        acc = acc.add(&c.mul(&closure_weight(d, params)));
    }
    let mut norm = RationalFn::one(&params.registry);
    for _ in 0..x.n {
        norm = norm.mul(&params.zw);
    }
    acc.div(&norm).expect("winding weight must be nonzero")
}

fn closure_weight(d: &BlobDiagram, params: &TlbParams) -> RationalFn {
    let n = d.n;
    if n == 0 {
        return RationalFn::one(&params.registry);
    }
    let partners = d.partner_table();
    let closure = |p: u8| -> u8 {
        let p = p as usize;
        if p < n {
            top_coord(n, p)
        } else {
            bottom_coord(2 * n - 1 - p)
        }
    };
    let mut visited = vec![false; 2 * n];
    let mut weight = RationalFn::one(&params.registry);
    for start in 0..(2 * n) as u8 {
        if visited[start as usize] {
            continue;
        }
        let mut p = start;
        let mut blobs = 0usize;
        let mut winding = 0i64;
        loop {
            visited[p as usize] = true;
            let (q, arc) = partners[p as usize];
            if d.blobs[arc] {
                blobs += 1;
            }
            visited[q as usize] = true;
            // cross the closure edge; top to bottom counts +1
            winding += if (q as usize) >= n { 1 } else { -1 };
            p = closure(q);
            if p == start {
                break;
            }
        }
        let base = if winding == 0 {
            if blobs == 0 {
                params.c.clone()
            } else {
                params.cp.clone()
            }
        } else if blobs == 0 {
            params.zw.clone()
        } else {
            params.zb.clone()
        };
        weight = weight.mul(&base);
        for _ in 0..blobs.saturating_sub(1) {
            weight = weight.mul(&params.d);
        }
    }
    weight
}

/// One branch of the skein substitution mapping braid generators into the
/// diagram algebra: `X_i -> a + b e_i` and `Y -> alpha + beta e0`.
#[derive(Debug, Clone)]
pub struct SkeinBranch {
    pub name: String,
    pub description: String,
    pub params: TlbParams,
    pub a: RationalFn,
    pub b: RationalFn,
    pub alpha: RationalFn,
    pub beta: RationalFn,
    /// Coefficients of the quadratic the cylinder image satisfies:
    /// `A^2 = q1 A + q0`.
    pub q1: RationalFn,
    pub q0: RationalFn,
}

#[derive(Debug, Clone)]
pub struct SkeinSolution {
    pub branches: Vec<SkeinBranch>,
}

impl SkeinSolution {
    pub fn generic(&self) -> &SkeinBranch {
        &self.branches[0]
    }
}

/// Solves the skein constraints with the crate's own expansion as the
/// oracle: the braid relation pins `c`, the four-term relation pins `cp`;
/// both solutions are verified by substituting back. Returns the generic
/// branch first, then the branch with the cylinder generator mapped to a
/// scalar.
pub fn solve_skein() -> Result<SkeinSolution, TlbError> {
    // solving registry carries c and cp as unknowns
    let sreg = Registry::new(vec!["a", "b", "alpha", "beta", "c", "cp", "d"]);
    let sparams = TlbParams {
        c: RationalFn::var(&sreg.var("c")),
        cp: RationalFn::var(&sreg.var("cp")),
        d: RationalFn::var(&sreg.var("d")),
        zw: RationalFn::one(&sreg),
        zb: RationalFn::one(&sreg),
        registry: sreg.clone(),
    };
    let a = RationalFn::var(&sreg.var("a"));
    let b = RationalFn::var(&sreg.var("b"));
    let alpha = RationalFn::var(&sreg.var("alpha"));
    let beta = RationalFn::var(&sreg.var("beta"));

    let image_x = |i: usize, n: usize| -> TlbElement {
        TlbElement::from_diagram(BlobDiagram::identity(n), a.clone())
            .add(&TlbElement::from_diagram(BlobDiagram::e(n, i), b.clone()))
    };

    // braid relation in TB_3: B1 B2 B1 - B2 B1 B2 = 0 pins c
    let b1 = image_x(1, 3);
    let b2 = image_x(2, 3);
    let lhs = b1.mul(&b2, &sparams).mul(&b1, &sparams);
    let rhs = b2.mul(&b1, &sparams).mul(&b2, &sparams);
    let diff = lhs.add(&rhs.scale(&RationalFn::int(&sreg, -1)));
    let c_sol = solve_linear_for(&diff, &sreg.var("c"))?;

    // four-term relation in TB_2 pins cp once c is substituted
    let subst_c = |r: &RationalFn| -> RationalFn {
        let mut bind = BTreeMap::new();
        bind.insert(sreg.var("c").index(), c_sol.clone());
        for name in ["a", "b", "alpha", "beta", "cp", "d"] {
            bind.insert(sreg.var(name).index(), RationalFn::var(&sreg.var(name)));
        }
        r.substitute(&bind).expect("substitution of c")
    };
    let a4 = TlbElement::from_diagram(BlobDiagram::identity(2), alpha.clone())
        .add(&TlbElement::from_diagram(BlobDiagram::e0(2), beta.clone()));
    let b4 = image_x(1, 2);
    let abab = a4.mul(&b4, &sparams).mul(&a4, &sparams).mul(&b4, &sparams);
    let baba = b4.mul(&a4, &sparams).mul(&b4, &sparams).mul(&a4, &sparams);
    let diff4 = abab.add(&baba.scale(&RationalFn::int(&sreg, -1)));
    let diff4 = TlbElement {
        n: diff4.n,
        coeffs: diff4
            .coeffs
            .iter()
            .map(|(d, c)| (d.clone(), subst_c(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect(),
    };
    let cp_sol = solve_linear_for(&diff4, &sreg.var("cp"))?;

    // verify: every relation coefficient vanishes under both substitutions
    let verify_bind = |r: &RationalFn| -> RationalFn {
        let mut bind = BTreeMap::new();
        bind.insert(sreg.var("c").index(), c_sol.clone());
        bind.insert(sreg.var("cp").index(), cp_sol.clone());
        for name in ["a", "b", "alpha", "beta", "d"] {
            bind.insert(sreg.var(name).index(), RationalFn::var(&sreg.var(name)));
        }
        r.substitute(&bind).expect("substitution of c, cp")
    };
    for e in [&diff, &diff4] {
        for coeff in e.coeffs.values() {
            if !verify_bind(coeff).is_zero() {
                return Err(TlbError::Domain(
                    "skein solution failed verification".to_string(),
                ));
            }
        }
    }

    // final registry drops the solved unknowns and adds the trace weights
    let reg = Registry::new(vec!["a", "b", "alpha", "beta", "d", "zw", "zb"]);
    let params = TlbParams {
        c: c_sol.transfer(&reg),
        cp: cp_sol.transfer(&reg),
        d: RationalFn::var(&reg.var("d")),
        zw: RationalFn::var(&reg.var("zw")),
        zb: RationalFn::var(&reg.var("zb")),
        registry: reg.clone(),
    };
    let ga = RationalFn::var(&reg.var("a"));
    let gb = RationalFn::var(&reg.var("b"));
    let galpha = RationalFn::var(&reg.var("alpha"));
    let gbeta = RationalFn::var(&reg.var("beta"));
    // the cylinder image satisfies A^2 = q1 A + q0 with
    // q1 = 2 alpha + beta d and q0 = -alpha (alpha + beta d)
    let q1 = galpha.add(&galpha).add(&gbeta.mul(&params.d));
    let q0 = galpha.mul(&galpha.add(&gbeta.mul(&params.d))).neg();

    let generic = SkeinBranch {
        name: "generic".to_string(),
        description: "beta nonzero; c = -a/b - b/a from the braid relation, \
                      cp pinned by the four-term relation"
            .to_string(),
        params: params.clone(),
        a: ga.clone(),
        b: gb.clone(),
        alpha: galpha,
        beta: gbeta,
        q1,
        q0,
    };

    // scalar branch: the cylinder generator maps to 1, so the four-term
    // relation holds trivially and the quadratic becomes q1 + q0 = 1
    let scalar = SkeinBranch {
        name: "scalar-cylinder".to_string(),
        description: "alpha = 1, beta = 0: the cylinder image is the unit; \
                      its quadratic forces q1 + q0 = 1"
            .to_string(),
        params: TlbParams {
            registry: reg.clone(),
            c: params.c.clone(),
            cp: RationalFn::var(&reg.var("d")),
            d: params.d.clone(),
            zw: params.zw.clone(),
            zb: params.zb.clone(),
        },
        a: ga,
        b: gb,
        alpha: RationalFn::one(&reg),
        beta: RationalFn::zero(&reg),
        q1: RationalFn::one(&reg),
        q0: RationalFn::zero(&reg),
    };

    Ok(SkeinSolution {
        branches: vec![generic, scalar],
    })
}

/// Solves a linear constraint `element = 0` for the variable `v`: the first
/// coefficient that genuinely involves `v` is solved and returned.
fn solve_linear_for(e: &TlbElement, v: &Var) -> Result<RationalFn, TlbError> {
    for coeff in e.coeffs.values() {
        if let Some(sol) = solve_linear_rf(coeff, v) {
            return Ok(sol);
        }
    }
    Err(TlbError::Domain(format!(
        "no constraint determines {}",
        v.name()
    )))
}

fn solve_linear_rf(f: &RationalFn, v: &Var) -> Option<RationalFn> {
    // f = (p + q v)/den with p, q, den free of v
    let vi = v.index();
    let reg = f.registry();
    let mut p = LaurentPoly::zero(reg);
    let mut q = LaurentPoly::zero(reg);
    for (m, c) in f.numerator().terms() {
        let e = m.0[vi];
        let mut stripped = m.0.clone();
        stripped[vi] = 0;
        let mono = LaurentPoly::monomial(reg, stripped, c.clone());
        match e {
            0 => p = p.add(&mono),
            1 => q = q.add(&mono),
            _ => return None,
        }
    }
    if f.denominator().terms().any(|(m, _)| m.0[vi] != 0) {
        return None;
    }
    if q.is_zero() {
        return None;
    }
    Some(RationalFn::new(p.neg(), q).expect("nonzero divisor"))
}

/// Image of a braid word under the skein substitution.
pub fn braid_image(w: &BraidWord, branch: &SkeinBranch) -> Result<TlbElement, TlbError> {
    let n = w.strands;
    let p = &branch.params;
    let one = RationalFn::one(&p.registry);
    let mut acc = TlbElement::from_diagram(BlobDiagram::identity(n), one);
    for l in &w.letters {
        let img = if l.index == 0 {
            let (x, y) = if l.power > 0 {
                (branch.alpha.clone(), branch.beta.clone())
            } else {
                // (alpha + beta e0)^-1 = alpha^-1 - beta/(alpha (alpha + beta d)) e0
                let denom = branch.alpha.mul(&branch.alpha.add(&branch.beta.mul(&p.d)));
                if branch.alpha.is_zero() || denom.is_zero() {
                    return Err(TlbError::Domain(
                        "cylinder image is not invertible".to_string(),
                    ));
                }
                (
                    branch.alpha.recip().unwrap(),
                    branch.beta.div(&denom).unwrap().neg(),
                )
            };
            TlbElement::from_diagram(BlobDiagram::identity(n), x)
                .add(&TlbElement::from_diagram(BlobDiagram::e0(n), y))
        } else {
            let (x, y) = if l.power > 0 {
                (branch.a.clone(), branch.b.clone())
            } else {
                // (a + b e)^-1 = a^-1 + b^-1 e exactly when c = -a/b - b/a
                (
                    branch.a.recip().map_err(|_| {
                        TlbError::Domain("crossing image is not invertible".to_string())
                    })?,
                    branch.b.recip().map_err(|_| {
                        TlbError::Domain("crossing image is not invertible".to_string())
                    })?,
                )
            };
            TlbElement::from_diagram(BlobDiagram::identity(n), x)
                .add(&TlbElement::from_diagram(BlobDiagram::e(n, l.index), y))
        };
        acc = acc.mul(&img, p);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{compute_basis, present_tlb};
    use rand_chacha::ChaCha8Rng;
    use rand_core::{RngCore, SeedableRng};

    #[test]
    fn diagram_counts_small() {
        assert_eq!(enumerate_diagrams(0).len(), 1);
        assert_eq!(enumerate_diagrams(1).len(), 2);
        assert_eq!(enumerate_diagrams(2).len(), 6);
        assert_eq!(enumerate_diagrams(3).len(), 20);
    }

    /// Independent brute-force generator: all perfect matchings filtered by
    /// the pairwise crossing test, then blob subsets by the exposure test.
    fn brute_force_diagrams(n: usize) -> Vec<BlobDiagram> {
        fn all_matchings(points: Vec<u8>) -> Vec<Vec<(u8, u8)>> {
            if points.is_empty() {
                return vec![Vec::new()];
            }
            let first = points[0];
            let mut out = Vec::new();
            for k in 1..points.len() {
                let mut rest = points.clone();
                let second = rest.remove(k);
                rest.remove(0);
                for m in all_matchings(rest) {
                    let mut v = vec![(first, second)];
                    v.extend(m);
                    out.push(v);
                }
            }
            out
        }
        let mut out = Vec::new();
        for m in all_matchings((0..2 * n as u8).collect()) {
            let mut arcs: Vec<(u8, u8)> = m
                .iter()
                .map(|&(x, y)| if x < y { (x, y) } else { (y, x) })
                .collect();
            arcs.sort();
            let cand = BlobDiagram {
                n,
                arcs,
                blobs: vec![false; n],
            };
            if !cand.is_noncrossing() {
                continue;
            }
            let exposed: Vec<usize> = (0..n).filter(|&k| cand.arc_exposed(k)).collect();
            for mask in 0..(1usize << exposed.len()) {
                let mut blobs = vec![false; n];
                for (bit, &k) in exposed.iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        blobs[k] = true;
                    }
                }
                out.push(BlobDiagram {
                    n,
                    arcs: cand.arcs.clone(),
                    blobs,
                });
            }
        }
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for n in 1..=5 {
            assert_eq!(enumerate_diagrams(n), brute_force_diagrams(n), "n = {n}");
        }
    }

    #[test]
    fn counts_match_presentation_dims() {
        for n in 1..=3 {
            let t = compute_basis(present_tlb(n)).unwrap();
            assert_eq!(enumerate_diagrams(n).len(), t.dim(), "n = {n}");
        }
    }

    #[test]
    fn defining_relations_as_compositions() {
        let p = TlbParams::symbolic();
        let n = 3;
        let e0 = BlobDiagram::e0(n);
        let e1 = BlobDiagram::e(n, 1);
        let e2 = BlobDiagram::e(n, 2);

        // e0 . e0 = d e0
        let (s, d) = compose(&e0, &e0, &p);
        assert!(s.rf_equal(&p.d));
        assert_eq!(d, e0);

        // e1 . e1 = c e1
        let (s, d) = compose(&e1, &e1, &p);
        assert!(s.rf_equal(&p.c));
        assert_eq!(d, e1);

        // e1 . e0 . e1 = cp e1
        let (s1, m) = compose(&e1, &e0, &p);
        let (s2, d) = compose(&m, &e1, &p);
        assert!(s1.mul(&s2).rf_equal(&p.cp));
        assert_eq!(d, e1);

        // e1 e2 e1 = e1 and e2 e1 e2 = e2
        let (s1, m) = compose(&e1, &e2, &p);
        let (s2, d) = compose(&m, &e1, &p);
        assert!(s1.mul(&s2).is_one());
        assert_eq!(d, e1);
        let (s1, m) = compose(&e2, &e1, &p);
        let (s2, d) = compose(&m, &e2, &p);
        assert!(s1.mul(&s2).is_one());
        assert_eq!(d, e2);
    }

    #[test]
    fn e0_e1_e0_is_a_basis_diagram() {
        // the double-blob diagram does not reduce
        let p = TlbParams::symbolic();
        let (s1, m) = compose(&BlobDiagram::e0(2), &BlobDiagram::e(2, 1), &p);
        let (s2, d) = compose(&m, &BlobDiagram::e0(2), &p);
        assert!(s1.is_one() && s2.is_one());
        assert_eq!(d.blobs.iter().filter(|&&b| b).count(), 2);
        assert!(enumerate_diagrams(2).contains(&d));
    }

    #[test]
    fn far_commutation_in_diagrams() {
        let p = TlbParams::symbolic();
        let n = 4;
        let e0 = BlobDiagram::e0(n);
        let e2 = BlobDiagram::e(n, 2);
        let e3 = BlobDiagram::e(n, 3);
        let (s1, a) = compose(&e0, &e2, &p);
        let (s2, b) = compose(&e2, &e0, &p);
        assert!(s1.is_one() && s2.is_one());
        assert_eq!(a, b);
        let e1 = BlobDiagram::e(n, 1);
        let (s1, a) = compose(&e1, &e3, &p);
        let (s2, b) = compose(&e3, &e1, &p);
        assert!(s1.is_one() && s2.is_one());
        assert_eq!(a, b);
    }

    #[test]
    fn compose_associative_random() {
        let p = TlbParams::symbolic();
        let n = 3;
        let diagrams = enumerate_diagrams(n);
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..200 {
            let pick = |rng: &mut ChaCha8Rng| {
                diagrams[(rng.next_u64() % diagrams.len() as u64) as usize].clone()
            };
            let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            let ea = TlbElement::from_diagram(a, RationalFn::one(&p.registry));
            let eb = TlbElement::from_diagram(b, RationalFn::one(&p.registry));
            let ec = TlbElement::from_diagram(c, RationalFn::one(&p.registry));
            let lhs = ea.mul(&eb, &p).mul(&ec, &p);
            let rhs = ea.mul(&eb.mul(&ec, &p), &p);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn trace_normalization_and_generators() {
        let p = TlbParams::symbolic();
        // tr(1) = 1
        let one = TlbElement::unit(2, &p);
        assert!(tlb_trace(&one, &p).is_one());

        // closure of e1 in TB_2 makes a single contractible loop while the
        // identity closure makes two winding loops, so tr(e1) = c / zw^2
        let e1 = TlbElement::from_diagram(BlobDiagram::e(2, 1), RationalFn::one(&p.registry));
        let expect = p.c.div(&p.zw.mul(&p.zw)).unwrap();
        assert!(tlb_trace(&e1, &p).rf_equal(&expect));

        // tr(e0) = zb / zw: one blobbed winding loop against one winding loop
        let e0 = TlbElement::from_diagram(BlobDiagram::e0(1), RationalFn::one(&p.registry));
        assert!(tlb_trace(&e0, &p).rf_equal(&p.zb.div(&p.zw).unwrap()));
    }

    #[test]
    fn trace_central_on_all_basis_pairs() {
        let p = TlbParams::symbolic();
        for n in 1..=3 {
            let diagrams = enumerate_diagrams(n);
            for a in &diagrams {
                for b in &diagrams {
                    let ea = TlbElement::from_diagram(a.clone(), RationalFn::one(&p.registry));
                    let eb = TlbElement::from_diagram(b.clone(), RationalFn::one(&p.registry));
                    let ab = tlb_trace(&ea.mul(&eb, &p), &p);
                    let ba = tlb_trace(&eb.mul(&ea, &p), &p);
                    assert!(ab.rf_equal(&ba), "tr not central at n = {n}");
                }
            }
        }
    }

    #[test]
    fn skein_c_matches_classical_pattern() {
        let sol = solve_skein().unwrap();
        let g = sol.generic();
        let reg = &g.params.registry;
        let a = RationalFn::var(&reg.var("a"));
        let b = RationalFn::var(&reg.var("b"));
        let expect = a.div(&b).unwrap().add(&b.div(&a).unwrap()).neg();
        assert!(g.params.c.rf_equal(&expect));
    }

    #[test]
    fn skein_images_satisfy_group_relations() {
        let sol = solve_skein().unwrap();
        let g = sol.generic();
        let p = &g.params;

        // braid relation on 3 strands
        let w1 = BraidWord::parse("1 2 1", 3).unwrap();
        let w2 = BraidWord::parse("2 1 2", 3).unwrap();
        assert_eq!(braid_image(&w1, g).unwrap(), braid_image(&w2, g).unwrap());

        // four-term relation on 2 strands, exact element equality
        let w1 = BraidWord::parse("y 1 y 1", 2).unwrap();
        let w2 = BraidWord::parse("1 y 1 y", 2).unwrap();
        assert_eq!(braid_image(&w1, g).unwrap(), braid_image(&w2, g).unwrap());

        // inverse pairs map to the unit
        for text in ["1 -1", "-1 1", "y y'", "y' y"] {
            let w = BraidWord::parse(text, 2).unwrap();
            let img = braid_image(&w, g).unwrap();
            assert_eq!(img, TlbElement::unit(2, p));
        }

        // far commutation with the cylinder generator
        let w1 = BraidWord::parse("y 2", 3).unwrap();
        let w2 = BraidWord::parse("2 y", 3).unwrap();
        assert_eq!(braid_image(&w1, g).unwrap(), braid_image(&w2, g).unwrap());
    }

    #[test]
    fn skein_images_invariant_under_shuffle() {
        let sol = solve_skein().unwrap();
        let g = sol.generic();
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for _ in 0..30 {
            let base = BraidWord::identity(3).relation_shuffle(5, rng.next_u64());
            let shuf = base.relation_shuffle(8, rng.next_u64());
            assert_eq!(
                braid_image(&base, g).unwrap(),
                braid_image(&shuf, g).unwrap()
            );
        }
    }

    #[test]
    fn scalar_branch_quadratic() {
        let sol = solve_skein().unwrap();
        let s = &sol.branches[1];
        assert!(s.beta.is_zero());
        // q1 + q0 = 1
        assert!(s.q1.add(&s.q0).is_one());
    }

    #[test]
    fn render_notation() {
        let e0 = BlobDiagram::e0(2);
        assert_eq!(e0.render(), "b1-t1* b2-t2");
        let e1 = BlobDiagram::e(2, 1);
        assert_eq!(e1.render(), "b1-b2 t2-t1");
    }
}
