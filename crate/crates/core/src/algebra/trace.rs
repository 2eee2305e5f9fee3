//! Markov trace functionals on a tower of basis tables, solved as an exact
//! linear system.
//!
//! The constraints are: normalization `tr(1) = 1` at every level,
//! centrality `tr(ab) = tr(ba)` (imposed through every
//! basis-times-generator pair, which spans all commutators), compatibility
//! with the tower inclusions, and the stabilization conditions linking
//! consecutive levels, `tr(w X_k) = (x lam)^-1 tr(w)` and
//! `tr(w X_k^-1) = (lam/x) tr(w)` for `w` in the next lower algebra. The
//! affine solution space is returned with its free parameters exposed as
//! fresh registry variables.

use super::rewrite::AlgebraError;
use super::{BasisTable, Element};
use crate::ring::{RationalFn, Registry};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, Clone)]
struct SparseRow {
    coeffs: BTreeMap<usize, RationalFn>,
    rhs: RationalFn,
}

impl SparseRow {
    fn add_scaled(&mut self, other: &SparseRow, c: &RationalFn) {
        for (col, k) in &other.coeffs {
            let add = k.mul(c);
            match self.coeffs.get_mut(col) {
                Some(e) => {
                    *e = e.add(&add);
                    if e.is_zero() {
                        self.coeffs.remove(col);
                    }
                }
                None => {
                    if !add.is_zero() {
                        self.coeffs.insert(*col, add);
                    }
                }
            }
        }
        self.rhs = self.rhs.add(&other.rhs.mul(c));
    }
}

/// The affine family of Markov traces on a tower of algebras.
pub struct MarkovTraceFamily {
    /// Registry of the tower's coefficients extended by the free parameters.
    pub registry: Arc<Registry>,
    /// Fresh variable names for the solution space's free parameters.
    pub free_params: Vec<String>,
    /// Human-readable description of each free parameter's unknown.
    pub free_param_origin: Vec<String>,
    /// Trace values per tower level, indexed by basis element.
    pub levels: Vec<Vec<RationalFn>>,
}

impl MarkovTraceFamily {
    /// Trace of an element of tower level `level` (0-based).
    pub fn eval(&self, level: usize, e: &Element) -> RationalFn {
        let mut acc = RationalFn::zero(&self.registry);
        for (i, c) in &e.coeffs {
            acc = acc.add(&c.lift(&self.registry).mul(&self.levels[level][*i]));
        }
        acc
    }
}

/// Solves the Markov trace family on the given tower (levels with
/// 1, 2, ... strands, in order). The last table is the algebra of interest;
/// the lower ones supply the stabilization constraints.
// index loops below walk parallel matrix columns, which iterator forms
// would only obscure
#[allow(clippy::needless_range_loop)]
pub fn solve_markov_trace(tower: &[&BasisTable]) -> Result<MarkovTraceFamily, AlgebraError> {
    assert!(!tower.is_empty());
    let base_reg = tower[0].registry.clone();
    for t in tower {
        assert!(
            crate::ring::same_registry(&t.registry, &base_reg),
            "tower levels must share a registry"
        );
    }

    let offsets: Vec<usize> = {
        let mut acc = 0;
        let mut v = Vec::new();
        for t in tower {
            v.push(acc);
            acc += t.dim();
        }
        v
    };
    let total: usize = offsets.last().unwrap() + tower.last().unwrap().dim();

    let elem_row = |level: usize, e: &Element, scale: &RationalFn| -> BTreeMap<usize, RationalFn> {
        e.coeffs
            .iter()
            .map(|(i, c)| (offsets[level] + i, c.mul(scale)))
            .collect()
    };

    let one = RationalFn::one(&base_reg);
    let minus_one = RationalFn::int(&base_reg, -1);
    let mut rows: Vec<SparseRow> = Vec::new();

    for (p, t) in tower.iter().enumerate() {
        // tr(1) = 1
        let mut coeffs = BTreeMap::new();
        coeffs.insert(offsets[p], one.clone());
        rows.push(SparseRow {
            coeffs,
            rhs: one.clone(),
        });

        // centrality on (basis, generator) pairs
        for i in 0..t.dim() {
            for g in 0..t.gens.len() as u8 {
                let right = t.right_mul_gen(&t.basis_element(i), g);
                let mut w = vec![g];
                w.extend_from_slice(&t.words[i].0);
                let left = t.elem_of_algebra_word(&w);
                let diff = right.sub(&left, &base_reg);
                if diff.is_zero() {
                    continue;
                }
                rows.push(SparseRow {
                    coeffs: elem_row(p, &diff, &one),
                    rhs: RationalFn::zero(&base_reg),
                });
            }
        }
    }

    // stabilization conditions between consecutive levels
    for p in 1..tower.len() {
        let lower = tower[p - 1];
        let upper = tower[p];
        let xk_name = format!("X{p}");
        let xk = upper
            .gen_index(&xk_name)
            .expect("upper level is missing its top braid generator");
        let (_, xk_inv) = upper
            .braid_image_of(p)
            .expect("upper level is missing the top braid image")
            .clone();

        let x = upper.constant("x").clone();
        let lam = upper.constant("lam").clone();
        let c_pos = x.mul(&lam).recip().expect("x*lam is invertible");
        let c_neg = lam.div(&x).expect("x is invertible");

        for (wi, w) in lower.words.iter().enumerate() {
            debug_assert_eq!(
                upper.word_index(w),
                Some(
                    upper
                        .elem_of_algebra_word(&w.0)
                        .coeffs
                        .keys()
                        .next()
                        .copied()
                        .unwrap()
                ),
                "lower basis word does not embed as a basis word"
            );
            let w_elem = upper.elem_of_algebra_word(&w.0);

            // the family is a trace on the tower: tr_p restricted to the
            // lower algebra agrees with tr_{p-1}
            let mut row = SparseRow {
                coeffs: elem_row(p, &w_elem, &one),
                rhs: RationalFn::zero(&base_reg),
            };
            row.add_scaled(
                &SparseRow {
                    coeffs: BTreeMap::from([(offsets[p - 1] + wi, one.clone())]),
                    rhs: RationalFn::zero(&base_reg),
                },
                &minus_one,
            );
            rows.push(row);

            let mut w_plus = w.0.clone();
            w_plus.push(xk);
            let e_plus = upper.elem_of_algebra_word(&w_plus);
            let mut row = SparseRow {
                coeffs: elem_row(p, &e_plus, &one),
                rhs: RationalFn::zero(&base_reg),
            };
            row.add_scaled(
                &SparseRow {
                    coeffs: BTreeMap::from([(offsets[p - 1] + wi, c_pos.clone())]),
                    rhs: RationalFn::zero(&base_reg),
                },
                &minus_one,
            );
            rows.push(row);

            let e_minus = upper.multiply(&w_elem, &xk_inv);
            let mut row = SparseRow {
                coeffs: elem_row(p, &e_minus, &one),
                rhs: RationalFn::zero(&base_reg),
            };
            row.add_scaled(
                &SparseRow {
                    coeffs: BTreeMap::from([(offsets[p - 1] + wi, c_neg.clone())]),
                    rhs: RationalFn::zero(&base_reg),
                },
                &minus_one,
            );
            rows.push(row);
        }
    }

    // Gaussian elimination to reduced row echelon form; pivots chosen as
    // the largest column so that the free parameters surface at the low,
    // Y-moment end of the unknown list.
    rows.sort_by_key(|r| r.coeffs.len());
    let mut pivots: BTreeMap<usize, SparseRow> = BTreeMap::new();
    for mut row in rows {
        loop {
            let mut reduced = false;
            let cols: Vec<usize> = row.coeffs.keys().copied().collect();
            for col in cols {
                if let Some(p) = pivots.get(&col) {
                    let c = row.coeffs[&col].clone();
                    let p = p.clone();
                    row.add_scaled(&p, &c.neg());
                    reduced = true;
                }
            }
            if !reduced {
                break;
            }
        }
        if row.coeffs.is_empty() {
            if !row.rhs.is_zero() {
                return Err(AlgebraError::Inconsistent(
                    "trace constraints have no solution".to_string(),
                ));
            }
            continue;
        }
        let (&pc, _) = row.coeffs.iter().next_back().unwrap();
        let inv = row.coeffs[&pc].recip().expect("pivot is invertible");
        let mut norm = SparseRow {
            coeffs: BTreeMap::new(),
            rhs: row.rhs.mul(&inv),
        };
        for (col, c) in &row.coeffs {
            norm.coeffs.insert(*col, c.mul(&inv));
        }
        // eliminate the new pivot column from the existing pivot rows
        let fix: Vec<usize> = pivots
            .iter()
            .filter(|(_, r)| r.coeffs.contains_key(&pc))
            .map(|(c, _)| *c)
            .collect();
        for f in fix {
            let c = pivots[&f].coeffs[&pc].clone();
            let mut r = pivots[&f].clone();
            r.add_scaled(&norm, &c.neg());
            pivots.insert(f, r);
        }
        pivots.insert(pc, norm);
    }

    // affine solution: particular vector plus direction vectors, one per
    // free column
    let free_cols: Vec<usize> = (0..total).filter(|c| !pivots.contains_key(c)).collect();
    let m = free_cols.len();
    let zero = RationalFn::zero(&base_reg);
    let mut particular: Vec<RationalFn> = vec![zero.clone(); total];
    let mut dirs: Vec<Vec<RationalFn>> = vec![vec![zero.clone(); m]; total];
    for (j, &fc) in free_cols.iter().enumerate() {
        dirs[fc][j] = one.clone();
    }
    for (&c, row) in &pivots {
        particular[c] = row.rhs.clone();
        for (col, k) in &row.coeffs {
            if *col == c {
                continue;
            }
            let j = free_cols
                .iter()
                .position(|f| f == col)
                .expect("pivot row not fully reduced");
            dirs[c][j] = k.neg();
        }
    }

    // reparametrize so the parameters attach to the earliest basis columns
    // whose trace values genuinely vary (low-level moments first)
    let mut anchor_rows: Vec<usize> = Vec::new();
    {
        let mut used_cols: Vec<usize> = Vec::new();
        for r in 0..total {
            if anchor_rows.len() == m {
                break;
            }
            let j = (0..m).find(|j| !used_cols.contains(j) && !dirs[r][*j].is_zero());
            let Some(j) = j else { continue };
            // normalize column j so row r has entry 1, clear it elsewhere
            let inv = dirs[r][j].recip().expect("nonzero direction entry");
            for c in 0..total {
                dirs[c][j] = dirs[c][j].mul(&inv);
            }
            for l in 0..m {
                if l != j && !dirs[r][l].is_zero() {
                    let f = dirs[r][l].clone();
                    for c in 0..total {
                        dirs[c][l] = dirs[c][l].sub(&f.mul(&dirs[c][j]));
                    }
                }
            }
            // shift the particular so the anchored value is exactly the
            // new parameter
            let shift = particular[r].clone();
            if !shift.is_zero() {
                for c in 0..total {
                    particular[c] = particular[c].sub(&shift.mul(&dirs[c][j]));
                }
            }
            anchor_rows.push(r);
            used_cols.push(j);
            // keep column order aligned with anchor order
            let k = anchor_rows.len() - 1;
            if used_cols[k] != k {
                let j2 = used_cols[k];
                for c in 0..total {
                    dirs[c].swap(k, j2);
                }
                for uc in used_cols.iter_mut() {
                    if *uc == k {
                        *uc = j2;
                    } else if *uc == j2 {
                        *uc = k;
                    }
                }
            }
        }
        assert_eq!(anchor_rows.len(), m, "direction matrix lost rank");
    }

    let free_params: Vec<String> = (1..=m).map(|k| format!("s{k}")).collect();
    let registry = base_reg.extend(free_params.clone());
    let describe = |col: usize| -> String {
        let p = (0..tower.len()).rev().find(|&p| col >= offsets[p]).unwrap();
        format!("tr_{}({})", p + 1, tower[p].render_word(col - offsets[p]))
    };
    let free_param_origin: Vec<String> = anchor_rows.iter().map(|&c| describe(c)).collect();

    let mut values: Vec<RationalFn> = vec![RationalFn::zero(&registry); total];
    for c in 0..total {
        let mut v = particular[c].lift(&registry);
        for (k, name) in free_params.iter().enumerate() {
            if !dirs[c][k].is_zero() {
                v = v.add(
                    &dirs[c][k]
                        .lift(&registry)
                        .mul(&RationalFn::var(&registry.var(name))),
                );
            }
        }
        values[c] = v;
    }

    let levels = tower
        .iter()
        .enumerate()
        .map(|(p, t)| values[offsets[p]..offsets[p] + t.dim()].to_vec())
        .collect();

    Ok(MarkovTraceFamily {
        registry,
        free_params,
        free_param_origin,
        levels,
    })
}

/// Rank of the trace bilinear form `(a, b) -> tr(ab)` on the basis of
/// `table`, after specializing every registry variable (including the free
/// trace parameters) to the supplied rational constants.
pub fn trace_gram_rank(
    table: &BasisTable,
    family: &MarkovTraceFamily,
    level: usize,
    specialization: &BTreeMap<String, BigRational>,
) -> usize {
    let reg = &family.registry;
    let empty = Registry::new(Vec::<String>::new());
    let bindings: BTreeMap<usize, RationalFn> = reg
        .names()
        .iter()
        .enumerate()
        .map(|(i, n)| {
            let c = specialization
                .get(n)
                .unwrap_or_else(|| panic!("specialization missing variable {n}"));
            (i, RationalFn::constant(&empty, c.clone()))
        })
        .collect();

    let dim = table.dim();
    let mut gram: Vec<Vec<BigRational>> = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut row = Vec::with_capacity(dim);
        let bi = table.basis_element(i);
        for j in 0..dim {
            let prod = table.multiply(&bi, &table.basis_element(j));
            let tr = family.eval(level, &prod);
            let val = tr.substitute(&bindings).expect("specialization hit a pole");
            row.push(constant_value(&val));
        }
        gram.push(row);
    }
    rational_rank(gram)
}

fn constant_value(r: &RationalFn) -> BigRational {
    let num = poly_constant(r.numerator());
    let den = poly_constant(r.denominator());
    num / den
}

fn poly_constant(p: &crate::ring::LaurentPoly) -> BigRational {
    assert!(p.is_constant(), "expected a constant polynomial");
    p.terms()
        .next()
        .map(|(_, c)| c.clone())
        .unwrap_or_else(BigRational::zero)
}

#[allow(clippy::needless_range_loop)]
fn rational_rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        if row >= rows {
            break;
        }
        let piv = (row..rows).find(|&r| !m[r][col].is_zero());
        let Some(piv) = piv else { continue };
        m.swap(row, piv);
        let inv = m[row][col].recip();
        for c in col..cols {
            let v = &m[row][c] * &inv;
            m[row][c] = v;
        }
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..cols {
                    let v = &m[r][c] - &f * &m[row][c];
                    m[r][c] = v;
                }
            }
        }
        row += 1;
        rank += 1;
    }
    let _ = BigRational::one();
    rank
}
