//! Presentations of the algebra instances: the type B Hecke algebra, the
//! type A Birman-Wenzl algebra, its cylinder (reduced type B) extension,
//! and the blob Temperley-Lieb algebra.
//!
//! Inverse generators are eliminated up front: quadratic relations solve
//! `X^-1` as a linear combination of `1`, `X` and (for the Birman-Wenzl
//! instances) `e`, so the rewriting alphabet stays finite and all rules are
//! strictly decreasing.

use super::rewrite::{CompletionLimits, Gen, LinComb, Word};
use super::Presentation;
use crate::ring::{LaurentPoly, RationalFn, Registry};
use std::collections::BTreeMap;
use std::sync::Arc;

fn lc(terms: Vec<(Vec<Gen>, RationalFn)>) -> LinComb {
    let mut out = LinComb::zero();
    for (w, c) in terms {
        out.add_scaled(&LinComb::single(Word(w), RationalFn::one(c.registry())), &c);
        let _ = ();
    }
    out
}

/// `delta = q - q^-1` over a registry containing `q`.
pub(crate) fn delta_poly(reg: &Arc<Registry>) -> LaurentPoly {
    let q = reg.var("q");
    LaurentPoly::var(&q).sub(&LaurentPoly::var_pow(&q, -1))
}

/// `x = 1 - (lam - lam^-1)/delta`.
pub(crate) fn x_param(reg: &Arc<Registry>) -> RationalFn {
    let lam = reg.var("lam");
    let num = LaurentPoly::var(&lam).sub(&LaurentPoly::var_pow(&lam, -1));
    RationalFn::one(reg).sub(&RationalFn::new(num, delta_poly(reg)).unwrap())
}

fn double_factorial_odd(n: usize) -> usize {
    // (2n-1)!! = 1 * 3 * ... * (2n-1)
    (0..n).fold(1, |acc, k| acc * (2 * k + 1))
}

/// The type B Hecke algebra on `n` strands over its default registry
/// `[Q, Q0]`. Dimension `2^n n!`.
#[allow(non_snake_case)]
pub fn present_heckeB(n: usize) -> Presentation {
    present_heckeB_over(n, &Registry::new(vec!["Q", "Q0"]))
}

#[allow(non_snake_case)]
pub fn present_heckeB_over(n: usize, reg: &Arc<Registry>) -> Presentation {
    assert!(n >= 1);
    let gens: Vec<String> = (0..n).map(|i| format!("X{i}")).collect();
    let q = RationalFn::var(&reg.var("Q"));
    let q0 = RationalFn::var(&reg.var("Q0"));
    let one = RationalFn::one(reg);

    let mut rules = Vec::new();
    for i in 0..n as Gen {
        // X_i^2 = (Q-1) X_i + Q, with Q0 in place of Q for the wall generator
        let (p, pm1) = if i == 0 {
            (q0.clone(), q0.sub(&one))
        } else {
            (q.clone(), q.sub(&one))
        };
        rules.push((vec![i, i], lc(vec![(vec![i], pm1), (vec![], p)])));
    }
    for j in 0..n as Gen {
        for i in 0..j {
            if j - i >= 2 {
                rules.push((vec![j, i], lc(vec![(vec![i, j], one.clone())])));
            }
        }
    }
    for i in 1..n.saturating_sub(1) as Gen {
        let (a, b) = (i, i + 1);
        rules.push((vec![b, a, b], lc(vec![(vec![a, b, a], one.clone())])));
    }
    if n >= 2 {
        rules.push((vec![1, 0, 1, 0], lc(vec![(vec![0, 1, 0, 1], one.clone())])));
    }

    // inverses from the quadratic relations: X^-1 = P^-1 X + (P^-1 - 1)
    let braid_images = (0..n)
        .map(|i| {
            let p = if i == 0 { q0.clone() } else { q.clone() };
            let pinv = p.recip().unwrap();
            let fwd = lc(vec![(vec![i as Gen], one.clone())]);
            let inv = lc(vec![
                (vec![i as Gen], pinv.clone()),
                (vec![], pinv.sub(&one)),
            ]);
            Some((fwd, inv))
        })
        .collect();

    let mut consts = BTreeMap::new();
    consts.insert("Q".to_string(), q);
    consts.insert("Q0".to_string(), q0);

    Presentation {
        name: format!("HB{n}"),
        gens,
        registry: reg.clone(),
        rules,
        expected_dim: Some((1 << n) * (1..=n).product::<usize>()),
        consts,
        braid_images,
        limits: CompletionLimits::default(),
    }
}

/// Shared Birman-Wenzl strand rules over generators `X_i` (id `x(i)`) and
/// `e_i` (id `e(i)`).
#[allow(clippy::too_many_arguments)]
fn bmw_strand_rules(
    reg: &Arc<Registry>,
    rules: &mut Vec<(Vec<Gen>, LinComb)>,
    strands: usize,
    x: impl Fn(usize) -> Gen,
    e: impl Fn(usize) -> Gen,
) {
    let one = RationalFn::one(reg);
    let lam = RationalFn::var(&reg.var("lam"));
    let lam_inv = RationalFn::var_pow(&reg.var("lam"), -1);
    let delta = RationalFn::from_poly(delta_poly(reg));
    let xp = x_param(reg);

    for i in 1..strands {
        let (xi, ei) = (x(i), e(i));
        // X_i^2 = 1 + delta X_i - delta lam e_i
        rules.push((
            vec![xi, xi],
            lc(vec![
                (vec![], one.clone()),
                (vec![xi], delta.clone()),
                (vec![ei], delta.mul(&lam).neg()),
            ]),
        ));
        // e_i^2 = x e_i
        rules.push((vec![ei, ei], lc(vec![(vec![ei], xp.clone())])));
        // X_i e_i = e_i X_i = lam e_i
        rules.push((vec![xi, ei], lc(vec![(vec![ei], lam.clone())])));
        rules.push((vec![ei, xi], lc(vec![(vec![ei], lam.clone())])));
    }
    for i in 1..strands.saturating_sub(1) {
        let (xa, ea) = (x(i), e(i));
        let (xb, eb) = (x(i + 1), e(i + 1));
        // braid relation, directed to pull the smaller index left
        rules.push((vec![xb, xa, xb], lc(vec![(vec![xa, xb, xa], one.clone())])));
        // e_{i+1} X_i e_{i+1} = lam^-1 e_{i+1} and its inverse companion
        rules.push((vec![eb, xa, eb], lc(vec![(vec![eb], lam_inv.clone())])));
        rules.push((vec![eb, ea, eb], lc(vec![(vec![eb], one.clone())])));
    }
    // far commutation among strand generators
    for i in 1..strands {
        for j in i + 2..strands {
            for &hi in &[x(j), e(j)] {
                for &lo in &[x(i), e(i)] {
                    rules.push((vec![hi, lo], lc(vec![(vec![lo, hi], one.clone())])));
                }
            }
        }
    }
}

/// The type A Birman-Wenzl algebra on `n` strands (generators
/// `X_1..X_{n-1}`, `e_1..e_{n-1}`) over its default registry `[q, lam]`.
/// Dimension `(2n-1)!!`.
#[allow(non_snake_case)]
pub fn present_bmwA(n: usize) -> Presentation {
    present_bmwA_over(n, &Registry::new(vec!["q", "lam"]))
}

#[allow(non_snake_case)]
pub fn present_bmwA_over(n: usize, reg: &Arc<Registry>) -> Presentation {
    assert!(n >= 1);
    let mut gens = Vec::new();
    for i in 1..n {
        gens.push(format!("X{i}"));
        gens.push(format!("e{i}"));
    }
    let x = |i: usize| (2 * (i - 1)) as Gen;
    let e = |i: usize| (2 * (i - 1) + 1) as Gen;

    let mut rules = Vec::new();
    bmw_strand_rules(reg, &mut rules, n, x, e);

    let one = RationalFn::one(reg);
    let delta = RationalFn::from_poly(delta_poly(reg));
    let mut braid_images: Vec<Option<(LinComb, LinComb)>> = vec![None];
    for i in 1..n {
        let fwd = lc(vec![(vec![x(i)], one.clone())]);
        // X^-1 = X - delta + delta e
        let inv = lc(vec![
            (vec![x(i)], one.clone()),
            (vec![], delta.neg()),
            (vec![e(i)], delta.clone()),
        ]);
        braid_images.push(Some((fwd, inv)));
    }

    let mut consts = BTreeMap::new();
    consts.insert("delta".to_string(), delta);
    consts.insert("x".to_string(), x_param(reg));
    consts.insert("lam".to_string(), RationalFn::var(&reg.var("lam")));

    Presentation {
        name: format!("BMWA{n}"),
        gens,
        registry: reg.clone(),
        rules,
        expected_dim: Some(double_factorial_odd(n)),
        consts,
        braid_images,
        limits: CompletionLimits::default(),
    }
}

/// The cylinder (reduced type B) Birman-Wenzl algebra on `n` strands over
/// its default registry `[q, lam, q1]`, with `q0 = q^-1` substituted.
/// Dimension `2^n (2n-1)!!`. Practical closure bound: `n <= 3`.
#[allow(non_snake_case)]
pub fn present_bmwB(n: usize) -> Presentation {
    present_bmwB_over(n, &Registry::new(vec!["q", "lam", "q1"]))
}

#[allow(non_snake_case)]
pub fn present_bmwB_over(n: usize, reg: &Arc<Registry>) -> Presentation {
    assert!(
        (1..=3).contains(&n),
        "cylinder Birman-Wenzl closure is bounded to n <= 3"
    );
    let mut gens = vec!["Y".to_string()];
    for i in 1..n {
        gens.push(format!("X{i}"));
        gens.push(format!("e{i}"));
    }
    let y: Gen = 0;
    let x = |i: usize| (2 * i - 1) as Gen;
    let e = |i: usize| (2 * i) as Gen;

    let one = RationalFn::one(reg);
    let q1 = RationalFn::var(&reg.var("q1"));
    let q0 = RationalFn::var_pow(&reg.var("q"), -1);

    let mut rules = Vec::new();
    bmw_strand_rules(reg, &mut rules, n, x, e);

    // Y^2 = q1 Y + q0
    rules.push((
        vec![y, y],
        lc(vec![(vec![y], q1.clone()), (vec![], q0.clone())]),
    ));
    // Y commutes with X_i, e_i for i > 1
    for i in 2..n {
        rules.push((vec![x(i), y], lc(vec![(vec![y, x(i)], one.clone())])));
        rules.push((vec![e(i), y], lc(vec![(vec![y, e(i)], one.clone())])));
    }
    if n >= 2 {
        // X1 Y X1 Y = Y X1 Y X1
        rules.push((
            vec![x(1), y, x(1), y],
            lc(vec![(vec![y, x(1), y, x(1)], one.clone())]),
        ));
        // Y X1 Y e1 = e1
        rules.push((vec![y, x(1), y, e(1)], lc(vec![(vec![e(1)], one.clone())])));
    }

    let delta = RationalFn::from_poly(delta_poly(reg));
    let mut braid_images: Vec<Option<(LinComb, LinComb)>> = Vec::new();
    // Y^-1 = q0^-1 (Y - q1) = q Y - q q1
    let qv = RationalFn::var(&reg.var("q"));
    braid_images.push(Some((
        lc(vec![(vec![y], one.clone())]),
        lc(vec![(vec![y], qv.clone()), (vec![], qv.mul(&q1).neg())]),
    )));
    for i in 1..n {
        braid_images.push(Some((
            lc(vec![(vec![x(i)], one.clone())]),
            lc(vec![
                (vec![x(i)], one.clone()),
                (vec![], delta.neg()),
                (vec![e(i)], delta.clone()),
            ]),
        )));
    }

    let mut consts = BTreeMap::new();
    consts.insert("delta".to_string(), delta);
    consts.insert("x".to_string(), x_param(reg));
    consts.insert("lam".to_string(), RationalFn::var(&reg.var("lam")));
    consts.insert("q".to_string(), qv);
    consts.insert("q1".to_string(), q1);

    Presentation {
        name: format!("BMWB{n}"),
        gens,
        registry: reg.clone(),
        rules,
        expected_dim: Some((1 << n) * double_factorial_odd(n)),
        consts,
        braid_images,
        limits: CompletionLimits::default(),
    }
}

/// The blob Temperley-Lieb presentation on `n` strands over registry
/// `[c, cp, d]`. Dimension `binomial(2n, n)`; cross-checked against the
/// diagram enumeration.
pub fn present_tlb(n: usize) -> Presentation {
    let reg = Registry::new(vec!["c", "cp", "d"]);
    present_tlb_over(n, &reg)
}

pub fn present_tlb_over(n: usize, reg: &Arc<Registry>) -> Presentation {
    assert!(n >= 1);
    let gens: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let c = RationalFn::var(&reg.var("c"));
    let cp = RationalFn::var(&reg.var("cp"));
    let d = RationalFn::var(&reg.var("d"));
    let one = RationalFn::one(reg);

    let mut rules = Vec::new();
    rules.push((vec![0, 0], lc(vec![(vec![0], d.clone())])));
    for i in 1..n as Gen {
        rules.push((vec![i, i], lc(vec![(vec![i], c.clone())])));
    }
    if n >= 2 {
        rules.push((vec![1, 0, 1], lc(vec![(vec![1], cp.clone())])));
    }
    for i in 1..n.saturating_sub(1) {
        let (a, b) = (i as Gen, (i + 1) as Gen);
        rules.push((vec![b, a, b], lc(vec![(vec![b], one.clone())])));
        rules.push((vec![a, b, a], lc(vec![(vec![a], one.clone())])));
    }
    for j in 0..n as Gen {
        for i in 0..j {
            if j - i >= 2 {
                rules.push((vec![j, i], lc(vec![(vec![i, j], one.clone())])));
            }
        }
    }

    let binom = {
        let mut v: u128 = 1;
        for k in 0..n as u128 {
            v = v * (2 * n as u128 - k) / (k + 1);
        }
        v as usize
    };

    let mut consts = BTreeMap::new();
    consts.insert("c".to_string(), c);
    consts.insert("cp".to_string(), cp);
    consts.insert("d".to_string(), d);

    Presentation {
        name: format!("TB{n}"),
        gens,
        registry: reg.clone(),
        rules,
        expected_dim: Some(binom),
        consts,
        braid_images: Vec::new(),
        limits: CompletionLimits::default(),
    }
}
