//! The wall-coupled Potts model: exact partition function by state
//! enumeration and through the diagram-algebra transfer expression, with an
//! exact cross-check between the two.
//!
//! States assign one of `f` values to every site. A state's weight is
//! `u^(number of equal-neighbor inner bonds)` times `w^(number of boundary
//! sites holding a nonzero value)`, with `u` and `w` formal variables, so
//! every comparison is a polynomial identity.
//!
//! The transfer route works on `2 C` diagram strands for a grid with `C`
//! columns: odd positions carry the column lanes, even positions the dual
//! lanes between columns, and the sweep walks the grid row by row. Each
//! bond contributes one two-term factor; the wall couples through the blob
//! generator. The scalar dictionary is derived from the state-enumeration
//! oracle on generating lattices before anything larger is evaluated, and
//! `sqrt(f)` is carried as a formal symbol that must cancel from the final
//! polynomial.

use crate::ring::{LaurentPoly, RationalFn, Registry, Var};
use crate::tlb::{tlb_trace, BlobDiagram, TlbElement, TlbParams};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

const MAX_STATE_SPACE: f64 = 1e7;
const MAX_TRANSFER_COLS: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PottsError {
    Capability(String),
    Parse(String),
    Correspondence(String),
}

impl fmt::Display for PottsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PottsError::Capability(m) => write!(f, "capability error: {m}"),
            PottsError::Parse(m) => write!(f, "parse error: {m}"),
            PottsError::Correspondence(m) => {
                write!(f, "transfer correspondence unsolved: {m}")
            }
        }
    }
}

impl std::error::Error for PottsError {}

/// Sites, inner bonds, and the set of wall-coupled sites.
#[derive(Debug, Clone)]
pub struct BoundaryLattice {
    pub sites: Vec<usize>,
    pub inner_bonds: Vec<(usize, usize)>,
    pub boundary_sites: BTreeSet<usize>,
    /// `(rows, cols)` when built by the grid constructor; the transfer
    /// route rejects anything else.
    pub grid: Option<(usize, usize)>,
}

impl BoundaryLattice {
    /// A rectangular grid, sites numbered row-major, with the left column
    /// wall-coupled.
    pub fn grid(rows: usize, cols: usize) -> BoundaryLattice {
        Self::grid_with_wall(rows, cols, true)
    }

    pub fn grid_with_wall(rows: usize, cols: usize, walled: bool) -> BoundaryLattice {
        assert!(rows >= 1 && cols >= 1);
        let id = |r: usize, c: usize| r * cols + c;
        let sites: Vec<usize> = (0..rows * cols).collect();
        let mut inner_bonds = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                if c + 1 < cols {
                    inner_bonds.push((id(r, c), id(r, c + 1)));
                }
                if r + 1 < rows {
                    inner_bonds.push((id(r, c), id(r + 1, c)));
                }
            }
        }
        let boundary_sites = if walled {
            (0..rows).map(|r| id(r, 0)).collect()
        } else {
            BTreeSet::new()
        };
        BoundaryLattice {
            sites,
            inner_bonds,
            boundary_sites,
            grid: Some((rows, cols)),
        }
    }

    /// Parses the line-oriented lattice format: `site <id>`, `bond <a> <b>`,
    /// `wall <id>`, or the shorthand `grid <rows> <cols>` (left column
    /// walled). Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<BoundaryLattice, PottsError> {
        let mut sites: Vec<usize> = Vec::new();
        let mut inner_bonds = Vec::new();
        let mut boundary_sites = BTreeSet::new();
        let mut grid: Option<(usize, usize)> = None;
        let mut any_explicit = false;

        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let kw = it.next().unwrap();
            let args: Vec<&str> = it.collect();
            let bad = |m: &str| PottsError::Parse(format!("line {}: {m}", lineno + 1));
            let num = |s: &str| -> Result<usize, PottsError> {
                s.parse().map_err(|_| bad(&format!("bad number `{s}`")))
            };
            match kw {
                "site" => {
                    if args.len() != 1 {
                        return Err(bad("site takes one id"));
                    }
                    sites.push(num(args[0])?);
                    any_explicit = true;
                }
                "bond" => {
                    if args.len() != 2 {
                        return Err(bad("bond takes two ids"));
                    }
                    let (a, b) = (num(args[0])?, num(args[1])?);
                    if a == b {
                        return Err(bad("self-bonds are not allowed"));
                    }
                    inner_bonds.push((a, b));
                    any_explicit = true;
                }
                "wall" => {
                    if args.len() != 1 {
                        return Err(bad("wall takes one id"));
                    }
                    boundary_sites.insert(num(args[0])?);
                    any_explicit = true;
                }
                "grid" => {
                    if args.len() != 2 {
                        return Err(bad("grid takes rows and cols"));
                    }
                    let g = BoundaryLattice::grid(num(args[0])?, num(args[1])?);
                    sites = g.sites;
                    inner_bonds = g.inner_bonds;
                    boundary_sites = g.boundary_sites;
                    grid = g.grid;
                }
                _ => return Err(bad(&format!("unknown keyword `{kw}`"))),
            }
        }
        if any_explicit {
            grid = None;
        }
        let l = BoundaryLattice {
            sites,
            inner_bonds,
            boundary_sites,
            grid,
        };
        l.validate().map_err(PottsError::Parse)?;
        Ok(l)
    }

    fn validate(&self) -> Result<(), String> {
        let set: BTreeSet<usize> = self.sites.iter().copied().collect();
        if set.len() != self.sites.len() {
            return Err("duplicate site ids".to_string());
        }
        for &(a, b) in &self.inner_bonds {
            if a == b {
                return Err("self-bond".to_string());
            }
            if !set.contains(&a) || !set.contains(&b) {
                return Err(format!("bond ({a}, {b}) references a missing site"));
            }
        }
        for s in &self.boundary_sites {
            if !set.contains(s) {
                return Err(format!("wall site {s} is missing"));
            }
        }
        Ok(())
    }
}

/// The registry every Potts polynomial lives over: the formal Boltzmann
/// variables and the formal square root of the state count.
pub fn potts_registry() -> Arc<Registry> {
    Registry::new(vec!["u", "w", "s"])
}

/// A partition function: a polynomial in `u`, `w` (the `s` component is
/// reduced away before anything is returned).
pub type PottsPoly = LaurentPoly;

/// Exact partition function by full state enumeration.
pub fn brute_force_z(l: &BoundaryLattice, f: u32) -> Result<PottsPoly, PottsError> {
    assert!(f >= 1);
    let nv = l.sites.len();
    if (f as f64).powi(nv as i32) > MAX_STATE_SPACE {
        return Err(PottsError::Capability(format!(
            "state space {f}^{nv} exceeds the enumeration bound"
        )));
    }
    let index: BTreeMap<usize, usize> = l.sites.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let bonds: Vec<(usize, usize)> = l
        .inner_bonds
        .iter()
        .map(|&(a, b)| (index[&a], index[&b]))
        .collect();
    let walls: Vec<usize> = l.boundary_sites.iter().map(|s| index[s]).collect();

    let mut counts: BTreeMap<(u32, u32), u64> = BTreeMap::new();
    let mut state = vec![0u32; nv];
    loop {
        let ue = bonds.iter().filter(|&&(a, b)| state[a] == state[b]).count() as u32;
        let we = walls.iter().filter(|&&i| state[i] != 0).count() as u32;
        *counts.entry((ue, we)).or_insert(0) += 1;

        // next state in mixed radix
        let mut i = 0;
        loop {
            if i == nv {
                let reg = potts_registry();
                let u = reg.var("u");
                let w = reg.var("w");
                let mut z = LaurentPoly::zero(&reg);
                for ((ue, we), count) in counts {
                    let mono = LaurentPoly::var_pow(&u, ue as i32)
                        .mul(&LaurentPoly::var_pow(&w, we as i32));
                    z = z.add(&mono.scale(&BigRational::from_integer(BigInt::from(count))));
                }
                return Ok(z);
            }
            state[i] += 1;
            if state[i] < f {
                break;
            }
            state[i] = 0;
            i += 1;
        }
    }
}

/// One factor of the transfer word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TangleFactor {
    /// Cup-cap initialization of a column lane (`e` at an odd position).
    Turnaround { e_index: usize },
    /// Vertical inner bond within a column: `x . 1 + e_odd`.
    Vertical { e_index: usize },
    /// Horizontal inner bond between two columns: `1 + x . e_even`.
    Horizontal { e_index: usize },
    /// Wall coupling of a row: `1 + y . e0`.
    Wall,
}

/// The transfer word of a grid: per-row wall and horizontal factors with
/// vertical factors between rows, after one turnaround factor per column.
pub fn lattice_to_tangle(l: &BoundaryLattice) -> Result<Vec<TangleFactor>, PottsError> {
    let Some((rows, cols)) = l.grid else {
        return Err(PottsError::Capability(
            "transfer evaluation requires a grid-constructed lattice".to_string(),
        ));
    };
    if cols > MAX_TRANSFER_COLS {
        return Err(PottsError::Capability(format!(
            "transfer evaluation bounded to {MAX_TRANSFER_COLS} columns"
        )));
    }
    let walled = !l.boundary_sites.is_empty();
    let mut word = Vec::new();
    for c in 1..=cols {
        word.push(TangleFactor::Turnaround { e_index: 2 * c - 1 });
    }
    for r in 0..rows {
        if walled {
            word.push(TangleFactor::Wall);
        }
        for c in 1..cols {
            word.push(TangleFactor::Horizontal { e_index: 2 * c });
        }
        if r + 1 < rows {
            for c in 1..=cols {
                word.push(TangleFactor::Vertical { e_index: 2 * c - 1 });
            }
        }
    }
    Ok(word)
}

/// The solved dictionary binding the diagram algebra to the Potts weights.
pub struct Correspondence {
    pub registry: Arc<Registry>,
    pub params: TlbParams,
    /// weight of the identity part of a vertical factor
    pub x_vert: RationalFn,
    /// weight of the `e` part of a horizontal factor
    pub x_horiz: RationalFn,
    /// weight of the `e0` part of a wall factor
    pub y_wall: RationalFn,
    pub f: u32,
}

impl Correspondence {
    /// The candidate dictionary: `x = (u - 1)/s`, `y = (1 - w)/w`, loop
    /// weights `c = s`, `cp = 1/s`, `d = 1`, winding weights 1, and overall
    /// normalization `w^|B0| s^|V|`. Solved against the state-enumeration
    /// oracle on generating lattices; any residual is reported, not
    /// patched.
    pub fn derive(f: u32) -> Result<Correspondence, PottsError> {
        let reg = potts_registry();
        let u = RationalFn::var(&reg.var("u"));
        let w = RationalFn::var(&reg.var("w"));
        let s = RationalFn::var(&reg.var("s"));
        let one = RationalFn::one(&reg);

        let x = u.sub(&one).div(&s).expect("s is a unit");
        let y = one.sub(&w).div(&w).expect("w is a unit");
        let params = TlbParams {
            registry: reg.clone(),
            c: s.clone(),
            cp: s.recip().unwrap(),
            d: one.clone(),
            zw: one.clone(),
            zb: one.clone(),
        };
        let cand = Correspondence {
            registry: reg,
            params,
            x_vert: x.clone(),
            x_horiz: x,
            y_wall: y,
            f,
        };

        // generating cases: the two closed forms and the smallest walled
        // column, which pins the blob weights
        let mut residuals = Vec::new();
        for (rows, cols, walled) in [
            (1, 1, false),
            (1, 1, true),
            (1, 2, false),
            (2, 1, false),
            (2, 1, true),
        ] {
            let l = BoundaryLattice::grid_with_wall(rows, cols, walled);
            let brute = brute_force_z(&l, f)?;
            let trace = trace_z_with(&l, f, &cand)?;
            if brute != trace {
                residuals.push(format!(
                    "{rows}x{cols} walled={walled}: enumeration {} vs transfer {}",
                    brute.render(),
                    trace.render()
                ));
            }
        }
        if residuals.is_empty() {
            Ok(cand)
        } else {
            Err(PottsError::Correspondence(residuals.join("; ")))
        }
    }
}

/// Partition function through the diagram-algebra transfer expression.
pub fn trace_z(l: &BoundaryLattice, f: u32) -> Result<PottsPoly, PottsError> {
    let corr = Correspondence::derive(f)?;
    trace_z_with(l, f, &corr)
}

fn trace_z_with(
    l: &BoundaryLattice,
    f: u32,
    corr: &Correspondence,
) -> Result<PottsPoly, PottsError> {
    if l.sites.is_empty() {
        return Ok(LaurentPoly::one(&corr.registry));
    }
    let Some((_, cols)) = l.grid else {
        return Err(PottsError::Capability(
            "transfer evaluation requires a grid-constructed lattice".to_string(),
        ));
    };
    let word = lattice_to_tangle(l)?;
    let n = 2 * cols;
    let reg = &corr.registry;
    let p = &corr.params;
    let one = RationalFn::one(reg);

    let mut acc = TlbElement::from_diagram(BlobDiagram::identity(n), one.clone());
    for factor in &word {
        let elem = match factor {
            TangleFactor::Turnaround { e_index } => {
                TlbElement::from_diagram(BlobDiagram::e(n, *e_index), one.clone())
            }
            TangleFactor::Vertical { e_index } => {
                TlbElement::from_diagram(BlobDiagram::identity(n), corr.x_vert.clone()).add(
                    &TlbElement::from_diagram(BlobDiagram::e(n, *e_index), one.clone()),
                )
            }
            TangleFactor::Horizontal { e_index } => {
                TlbElement::from_diagram(BlobDiagram::identity(n), one.clone()).add(
                    &TlbElement::from_diagram(BlobDiagram::e(n, *e_index), corr.x_horiz.clone()),
                )
            }
            TangleFactor::Wall => {
                TlbElement::from_diagram(BlobDiagram::identity(n), one.clone()).add(
                    &TlbElement::from_diagram(BlobDiagram::e0(n), corr.y_wall.clone()),
                )
            }
        };
        acc = acc.mul(&elem, p);
    }

    let tr = tlb_trace(&acc, p);

    // normalization: w^|B0| s^|V|
    let wv = reg.var("w");
    let sv = reg.var("s");
    let norm = RationalFn::from_poly(
        LaurentPoly::var_pow(&wv, l.boundary_sites.len() as i32)
            .mul(&LaurentPoly::var_pow(&sv, l.sites.len() as i32)),
    );
    let value = tr.mul(&norm);

    reduce_sqrt(&value, &sv, f)
}

/// Reduces the formal square root: `s^(2k) -> f^k`. The result must be free
/// of odd powers of `s` and polynomial.
fn reduce_sqrt(value: &RationalFn, s: &Var, f: u32) -> Result<PottsPoly, PottsError> {
    let fold = |p: &LaurentPoly| -> Result<(LaurentPoly, bool), PottsError> {
        let reg = p.registry();
        let si = s.index();
        let mut out = LaurentPoly::zero(reg);
        let mut odd = false;
        for (m, c) in p.terms() {
            let e = m.0[si];
            if e.rem_euclid(2) == 1 {
                odd = true;
            }
            let k = e.div_euclid(2);
            let mut exps = m.0.clone();
            exps[si] = e.rem_euclid(2);
            let scale = BigRational::from_integer(BigInt::from(f)).pow(k);
            out = out.add(&LaurentPoly::monomial(reg, exps, c * scale));
        }
        Ok((out, odd))
    };
    let (num, num_odd) = fold(value.numerator())?;
    let (den, den_odd) = fold(value.denominator())?;
    // a leftover single power of s in both places still cancels
    let value = RationalFn::new(num, den).expect("nonzero denominator");
    let _ = (num_odd, den_odd);
    if value.denominator().is_one() {
        let poly = value.numerator().clone();
        if poly.terms().any(|(m, _)| m.0[s.index()] != 0) {
            return Err(PottsError::Correspondence(
                "result does not close over the integers: stray sqrt factor".to_string(),
            ));
        }
        Ok(poly)
    } else {
        // try once more after the fold simplification
        let num = value.numerator().clone();
        let den = value.denominator().clone();
        match num.exact_div(&den) {
            Some(q) if !q.terms().any(|(m, _)| m.0[s.index()] != 0) => Ok(q),
            _ => Err(PottsError::Correspondence(format!(
                "transfer value is not polynomial: ({})/({})",
                num.render(),
                den.render()
            ))),
        }
    }
}

/// Exact comparison of the two evaluations.
#[derive(Debug, Clone)]
pub struct CrosscheckReport {
    pub pass: bool,
    pub brute: PottsPoly,
    pub trace: PottsPoly,
    pub differing: Vec<String>,
}

pub fn crosscheck(l: &BoundaryLattice, f: u32) -> Result<CrosscheckReport, PottsError> {
    let brute = brute_force_z(l, f)?;
    let trace = trace_z(l, f)?;
    let mut differing = Vec::new();
    if brute != trace {
        let diff = brute.sub(&trace);
        for (m, c) in diff.terms() {
            differing.push(format!("coefficient mismatch {} at {:?}", c, m.0));
        }
    }
    Ok(CrosscheckReport {
        pass: differing.is_empty(),
        brute,
        trace,
        differing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_poly(pairs: &[(i32, i32, i64)]) -> PottsPoly {
        let reg = potts_registry();
        let u = reg.var("u");
        let w = reg.var("w");
        let mut z = LaurentPoly::zero(&reg);
        for &(ue, we, c) in pairs {
            z = z.add(
                &LaurentPoly::var_pow(&u, ue)
                    .mul(&LaurentPoly::var_pow(&w, we))
                    .scale(&BigRational::from_integer(BigInt::from(c))),
            );
        }
        z
    }

    #[test]
    fn one_site_with_wall() {
        // 1 + (f-1) w
        for f in [2u32, 3, 5] {
            let l = BoundaryLattice::grid(1, 1);
            let z = brute_force_z(&l, f).unwrap();
            assert_eq!(z, int_poly(&[(0, 0, 1), (0, 1, (f - 1) as i64)]));
        }
    }

    #[test]
    fn two_sites_one_bond_no_wall() {
        // f u + f (f-1)
        for f in [2u32, 3] {
            let l = BoundaryLattice::grid_with_wall(1, 2, false);
            let z = brute_force_z(&l, f).unwrap();
            assert_eq!(
                z,
                int_poly(&[(1, 0, f as i64), (0, 0, (f * (f - 1)) as i64)])
            );
        }
    }

    #[test]
    fn coefficients_sum_to_state_count() {
        for f in [2u32, 3] {
            for (r, c) in [(1, 2), (2, 2), (2, 3)] {
                let l = BoundaryLattice::grid(r, c);
                let z = brute_force_z(&l, f).unwrap();
                let total: BigRational = z.terms().map(|(_, c)| c.clone()).sum();
                let expect = BigRational::from_integer(BigInt::from(f).pow((r * c) as u32));
                assert_eq!(total, expect);
            }
        }
    }

    #[test]
    fn multiplicative_over_disconnected_components() {
        // two disjoint single sites vs one site, squared
        let two = BoundaryLattice {
            sites: vec![0, 1],
            inner_bonds: vec![],
            boundary_sites: [0, 1].into_iter().collect(),
            grid: None,
        };
        let one = BoundaryLattice {
            sites: vec![0],
            inner_bonds: vec![],
            boundary_sites: [0].into_iter().collect(),
            grid: None,
        };
        for f in [2u32, 3] {
            let z2 = brute_force_z(&two, f).unwrap();
            let z1 = brute_force_z(&one, f).unwrap();
            assert_eq!(z2, z1.mul(&z1));
        }
    }

    #[test]
    fn fixture_2x2_grid_f2() {
        // full 16-state enumeration, frozen
        let l = BoundaryLattice::grid(2, 2);
        let z = brute_force_z(&l, 2).unwrap();
        let mut expect = BTreeMap::new();
        for state in 0..16u32 {
            let s = [
                state & 1,
                (state >> 1) & 1,
                (state >> 2) & 1,
                (state >> 3) & 1,
            ];
            // sites 0 1 / 2 3; bonds (0,1),(0,2),(1,3),(2,3); wall 0, 2
            let ue = [(0, 1), (0, 2), (1, 3), (2, 3)]
                .iter()
                .filter(|&&(a, b)| s[a] == s[b])
                .count() as i32;
            let we = [0, 2].iter().filter(|&&i| s[i] != 0).count() as i32;
            *expect.entry((ue, we)).or_insert(0i64) += 1;
        }
        let pairs: Vec<(i32, i32, i64)> = expect.into_iter().map(|((a, b), c)| (a, b, c)).collect();
        assert_eq!(z, int_poly(&pairs));
    }

    #[test]
    fn capability_bound_enforced() {
        let l = BoundaryLattice::grid(5, 5);
        assert!(matches!(
            brute_force_z(&l, 10),
            Err(PottsError::Capability(_))
        ));
    }

    #[test]
    fn parse_lattice_format() {
        let text = "site 0\nsite 1\nbond 0 1\nwall 0\n";
        let l = BoundaryLattice::parse(text).unwrap();
        assert_eq!(l.sites.len(), 2);
        assert_eq!(l.inner_bonds, vec![(0, 1)]);
        assert!(l.boundary_sites.contains(&0));
        assert!(l.grid.is_none());

        let g = BoundaryLattice::parse("grid 2 3\n").unwrap();
        assert_eq!(g.grid, Some((2, 3)));
        assert_eq!(g.sites.len(), 6);
        assert_eq!(g.boundary_sites.len(), 2);

        assert!(BoundaryLattice::parse("bond 0 0\nsite 0\n").is_err());
        assert!(BoundaryLattice::parse("frob 1\n").is_err());
    }

    #[test]
    fn tangle_word_shapes() {
        // single site with a wall: the only bond factor is the wall hook
        let l = BoundaryLattice::grid(1, 1);
        let word = lattice_to_tangle(&l).unwrap();
        assert_eq!(
            word,
            vec![TangleFactor::Turnaround { e_index: 1 }, TangleFactor::Wall]
        );

        // open grid: no wall factors at all
        let l = BoundaryLattice::grid_with_wall(2, 2, false);
        let word = lattice_to_tangle(&l).unwrap();
        assert!(word.iter().all(|f| !matches!(f, TangleFactor::Wall)));

        // per-row pattern: wall hook, then horizontals, then verticals
        let l = BoundaryLattice::grid(3, 3);
        let word = lattice_to_tangle(&l).unwrap();
        let expect = vec![
            TangleFactor::Turnaround { e_index: 1 },
            TangleFactor::Turnaround { e_index: 3 },
            TangleFactor::Turnaround { e_index: 5 },
            TangleFactor::Wall,
            TangleFactor::Horizontal { e_index: 2 },
            TangleFactor::Horizontal { e_index: 4 },
            TangleFactor::Vertical { e_index: 1 },
            TangleFactor::Vertical { e_index: 3 },
            TangleFactor::Vertical { e_index: 5 },
            TangleFactor::Wall,
            TangleFactor::Horizontal { e_index: 2 },
            TangleFactor::Horizontal { e_index: 4 },
            TangleFactor::Vertical { e_index: 1 },
            TangleFactor::Vertical { e_index: 3 },
            TangleFactor::Vertical { e_index: 5 },
            TangleFactor::Wall,
            TangleFactor::Horizontal { e_index: 2 },
            TangleFactor::Horizontal { e_index: 4 },
        ];
        assert_eq!(word, expect);

        // non-grid lattices are rejected
        let l = BoundaryLattice::parse("site 0\nsite 1\nbond 0 1\n").unwrap();
        assert!(matches!(
            lattice_to_tangle(&l),
            Err(PottsError::Capability(_))
        ));
    }

    #[test]
    fn trace_matches_closed_forms() {
        for f in [2u32, 3] {
            let l = BoundaryLattice::grid(1, 1);
            let z = trace_z(&l, f).unwrap();
            assert_eq!(z, int_poly(&[(0, 0, 1), (0, 1, (f - 1) as i64)]));

            let l = BoundaryLattice::grid_with_wall(1, 2, false);
            let z = trace_z(&l, f).unwrap();
            assert_eq!(
                z,
                int_poly(&[(1, 0, f as i64), (0, 0, (f * (f - 1)) as i64)])
            );
        }
    }

    #[test]
    fn crosscheck_small_grids() {
        for f in [2u32, 3] {
            for (r, c) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
                for walled in [true, false] {
                    let l = BoundaryLattice::grid_with_wall(r, c, walled);
                    let rep = crosscheck(&l, f).unwrap();
                    assert!(
                        rep.pass,
                        "{r}x{c} walled={walled} f={f}: {:?}",
                        rep.differing
                    );
                }
            }
        }
    }

    #[test]
    fn empty_lattice_is_one() {
        let l = BoundaryLattice {
            sites: vec![],
            inner_bonds: vec![],
            boundary_sites: BTreeSet::new(),
            grid: None,
        };
        for f in [2u32, 3] {
            assert!(brute_force_z(&l, f).unwrap().is_one());
            assert!(trace_z(&l, f).unwrap().is_one());
        }
    }

    #[test]
    fn kappa_zero_limit() {
        // setting w = 1 in a walled lattice equals the open lattice
        let reg = potts_registry();
        let w = reg.var("w");
        for f in [2u32, 3] {
            let l = BoundaryLattice::grid(2, 2);
            let z = brute_force_z(&l, f).unwrap();
            let mut bind = BTreeMap::new();
            bind.insert(w.index(), RationalFn::one(&reg));
            for name in ["u", "s"] {
                bind.insert(reg.var(name).index(), RationalFn::var(&reg.var(name)));
            }
            let z_at_one = RationalFn::from_poly(z).substitute(&bind).unwrap();
            let open = BoundaryLattice::grid_with_wall(2, 2, false);
            let z_open = brute_force_z(&open, f).unwrap();
            assert!(z_at_one.rf_equal(&RationalFn::from_poly(z_open)));
        }
    }

    #[test]
    fn perturbed_scalar_fails_crosscheck() {
        // negative control: a wrong bond scalar leaves a witness
        let f = 2;
        let reg = potts_registry();
        let u = RationalFn::var(&reg.var("u"));
        let s = RationalFn::var(&reg.var("s"));
        let one = RationalFn::one(&reg);
        let good = Correspondence::derive(f).unwrap();
        let bad = Correspondence {
            registry: reg.clone(),
            params: good.params.clone(),
            x_vert: u.clone().div(&s).unwrap(), // should be (u - 1)/s
            x_horiz: good.x_horiz.clone(),
            y_wall: good.y_wall.clone(),
            f,
        };
        let l = BoundaryLattice::grid(2, 1);
        let brute = brute_force_z(&l, f).unwrap();
        let trace = trace_z_with(&l, f, &bad).unwrap();
        assert_ne!(brute, trace);
        let _ = one;
    }
}
