//! Formal Chern-root expansions of wedge, symmetric and tensor products.
//!
//! This module is the reference path used by the test suites to validate the
//! closed-form product formulas in [`crate::intersection`]; library code
//! never calls into it, so the two routes stay independent.
//!
//! A product such as `wedge^2 E` for `E` of rank `r` is expanded as
//! `prod_{i<j} (1 + (a_i + a_j) t)` in formal root variables `a_1..a_r`,
//! truncated at `t^n`. Each `t`-coefficient is a symmetric polynomial, which
//! [`symmetrize`] rewrites in the elementary symmetric polynomials; the
//! resulting templates are polynomials in the Chern classes `e_1..e_r`
//! (and `f_1..f_s` for tensor products) that can be evaluated on concrete
//! classes.

use crate::intersection::{IntersectionClass, SheafClass};
use crate::multipoly::{MultiPoly, VarSet};
use crate::rational::Rat;
use crate::scalar::Scalar;

/// A family of polynomials `c_0..c_n` in the Chern-class variables of the
/// factors, describing the total Chern class of a product construction.
#[derive(Clone, Debug)]
pub struct ChernTemplate {
    /// Variable list: `e1..e_r` then `f1..f_s` (empty `f` part for
    /// single-argument constructions).
    pub vars: VarSet,
    pub e_rank: u32,
    pub f_rank: u32,
    /// Rank of the constructed bundle.
    pub out_rank: u32,
    /// `c_0..c_n` as polynomials in the template variables.
    pub c: Vec<MultiPoly>,
}

fn class_vars(e_rank: u32, f_rank: u32) -> VarSet {
    let mut names: Vec<String> = (1..=e_rank).map(|i| format!("e{i}")).collect();
    names.extend((1..=f_rank).map(|j| format!("f{j}")));
    VarSet::new(names)
}

fn root_vars(e_rank: u32, f_rank: u32) -> VarSet {
    let mut names: Vec<String> = (1..=e_rank).map(|i| format!("a{i}")).collect();
    names.extend((1..=f_rank).map(|j| format!("b{j}")));
    VarSet::new(names)
}

/// Elementary symmetric polynomial `e_k` of the variables in `range`.
fn elementary(vars: &VarSet, range: std::ops::Range<usize>, k: usize) -> MultiPoly {
    let idx: Vec<usize> = range.collect();
    if k == 0 {
        return MultiPoly::one(vars);
    }
    if k > idx.len() {
        return MultiPoly::zero(vars);
    }
    let mut acc = MultiPoly::zero(vars);
    let mut choice = (0..k).collect::<Vec<usize>>();
    loop {
        let exps: Vec<(usize, u16)> = choice.iter().map(|&c| (idx[c], 1)).collect();
        acc = &acc + &MultiPoly::monomial(vars, &exps, Scalar::one());
        // next k-subset of 0..idx.len()
        let mut i = k;
        loop {
            if i == 0 {
                return acc;
            }
            i -= 1;
            if choice[i] != i + idx.len() - k {
                break;
            }
        }
        choice[i] += 1;
        for j in i + 1..k {
            choice[j] = choice[j - 1] + 1;
        }
    }
}

/// Rewrite a polynomial that is symmetric separately in the two variable
/// groups (roots `a1..a_r`, `b1..b_s`) as a polynomial in the elementary
/// symmetric polynomials of each group.
///
/// Standard leading-term elimination: the lexicographic leading exponent of
/// a symmetric polynomial is a partition inside each group, and subtracting
/// the matching product of elementary symmetric polynomials strictly lowers
/// it. Panics if the input is not symmetric.
fn symmetrize(p: &MultiPoly, e_rank: u32, f_rank: u32) -> MultiPoly {
    let roots = p.vars().clone();
    let out_vars = class_vars(e_rank, f_rank);
    let r = e_rank as usize;
    let s = f_rank as usize;
    let mut rest = p.clone();
    let mut out = MultiPoly::zero(&out_vars);
    while let Some((lead, coeff)) = rest.leading_term() {
        let lead = lead.clone();
        let coeff = coeff.clone();
        let lam = &lead[..r];
        let nu = &lead[r..];
        assert!(
            lam.windows(2).all(|w| w[0] >= w[1]) && nu.windows(2).all(|w| w[0] >= w[1]),
            "input is not symmetric in each variable group"
        );
        // exponents of the elementary symmetric products: lam_k - lam_{k+1}
        let mut term_out = MultiPoly::constant(&out_vars, coeff.clone());
        let mut term_roots = MultiPoly::constant(&roots, coeff);
        for k in 0..r {
            let next = if k + 1 < r { lam[k + 1] } else { 0 };
            let exp = (lam[k] - next) as u32;
            if exp > 0 {
                term_out = &term_out * &MultiPoly::var(&out_vars, k).pow(exp);
                term_roots = &term_roots * &elementary(&roots, 0..r, k + 1).pow(exp);
            }
        }
        for k in 0..s {
            let next = if k + 1 < s { nu[k + 1] } else { 0 };
            let exp = (nu[k] - next) as u32;
            if exp > 0 {
                term_out = &term_out * &MultiPoly::var(&out_vars, r + k).pow(exp);
                term_roots = &term_roots * &elementary(&roots, r..r + s, k + 1).pow(exp);
            }
        }
        out = &out + &term_out;
        rest = &rest - &term_roots;
    }
    out
}

/// Multiply truncated `t`-polynomials with `MultiPoly` coefficients.
fn mul_truncated(a: &[MultiPoly], b: &[MultiPoly], n: usize, vars: &VarSet) -> Vec<MultiPoly> {
    let mut out = vec![MultiPoly::zero(vars); n + 1];
    for (i, ai) in a.iter().enumerate().take(n + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if i + j > n {
                break;
            }
            out[i + j] = &out[i + j] + &(ai * bj);
        }
    }
    out
}

/// Expand `prod (1 + l t)` over the given linear root-sums `l`, truncated
/// at `t^n`, and symmetrize each coefficient.
fn template_from_factors(
    factors: Vec<MultiPoly>,
    e_rank: u32,
    f_rank: u32,
    out_rank: u32,
    n: usize,
) -> ChernTemplate {
    let roots = root_vars(e_rank, f_rank);
    let mut total = vec![MultiPoly::zero(&roots); n + 1];
    total[0] = MultiPoly::one(&roots);
    for l in factors {
        let factor = vec![MultiPoly::one(&roots), l];
        total = mul_truncated(&total, &factor, n, &roots);
    }
    let c = total
        .iter()
        .map(|p| symmetrize(p, e_rank, f_rank))
        .collect();
    ChernTemplate {
        vars: class_vars(e_rank, f_rank),
        e_rank,
        f_rank,
        out_rank,
        c,
    }
}

/// Template for `wedge^p E`, `E` of rank `r`, on `P^n`.
pub fn wedge_template(r: u32, p: u32, n: usize) -> ChernTemplate {
    let roots = root_vars(r, 0);
    let mut factors = Vec::new();
    let mut subset: Vec<usize> = (0..p as usize).collect();
    let r = r as usize;
    loop {
        let mut l = MultiPoly::zero(&roots);
        for &i in &subset {
            l = &l + &MultiPoly::var(&roots, i);
        }
        factors.push(l);
        // next p-subset of 0..r
        let p = subset.len();
        let mut i = p;
        loop {
            if i == 0 {
                let out_rank = factors.len() as u32;
                return template_from_factors(factors, r as u32, 0, out_rank, n);
            }
            i -= 1;
            if subset[i] != i + r - p {
                break;
            }
        }
        subset[i] += 1;
        for j in i + 1..p {
            subset[j] = subset[j - 1] + 1;
        }
    }
}

/// Template for `Sym^2 E`, `E` of rank `r`, on `P^n`.
pub fn sym2_template(r: u32, n: usize) -> ChernTemplate {
    let roots = root_vars(r, 0);
    let mut factors = Vec::new();
    for i in 0..r as usize {
        for j in i..r as usize {
            factors.push(&MultiPoly::var(&roots, i) + &MultiPoly::var(&roots, j));
        }
    }
    let out_rank = factors.len() as u32;
    template_from_factors(factors, r, 0, out_rank, n)
}

/// Template for `E (x) F` of ranks `r`, `s`, on `P^n`.
pub fn tensor_template(r: u32, s: u32, n: usize) -> ChernTemplate {
    let roots = root_vars(r, s);
    let mut factors = Vec::new();
    for i in 0..r as usize {
        for j in 0..s as usize {
            factors.push(&MultiPoly::var(&roots, i) + &MultiPoly::var(&roots, r as usize + j));
        }
    }
    template_from_factors(factors, r, s, r * s, n)
}

impl ChernTemplate {
    /// Evaluate at concrete Chern classes. For single-argument templates
    /// pass the same class twice or use [`ChernTemplate::eval1`].
    pub fn eval(&self, e: &SheafClass, f: Option<&SheafClass>) -> SheafClass {
        assert_eq!(e.rank(), self.e_rank, "wrong rank for first argument");
        let n = e.ambient_dim();
        let mut point: Vec<Scalar> = (1..=self.e_rank as usize)
            .map(|i| Scalar::from_rat(e.c(i)))
            .collect();
        if self.f_rank > 0 {
            let f = f.expect("template needs a second argument");
            assert_eq!(f.rank(), self.f_rank, "wrong rank for second argument");
            point.extend((1..=self.f_rank as usize).map(|j| Scalar::from_rat(f.c(j))));
        }
        let coeffs: Vec<Rat> = self
            .c
            .iter()
            .map(|p| p.eval(&point).to_rat().expect("rational template"))
            .collect();
        SheafClass::formal(
            self.out_rank,
            IntersectionClass::from_coeffs(n, coeffs),
            "splitting-oracle",
        )
    }

    pub fn eval1(&self, e: &SheafClass) -> SheafClass {
        self.eval(e, None)
    }
}
