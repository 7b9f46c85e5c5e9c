//! The level-5 Heisenberg symmetry on `P^4` and its invariant pencils.
//!
//! The group is generated by the index shift `sigma: z_k -> z_{k-1}` and the
//! character twist `tau: z_k -> eps^{-k} z_k` with `eps = e^{2 pi i / 5}`.
//! This module builds:
//!
//! * the generator matrices ([`hm_sigma`], [`hm_tau`]);
//! * the pencil of invariant quintic-scroll cubics `f^0..f^4`
//!   ([`scroll_cubics`]);
//! * the pencil of invariant quadratic Poisson bivectors singular along
//!   those scrolls ([`pencil_bivector`]);
//! * the constant-coefficient bivector pencil whose decomposable members sit
//!   at `[1 +- sqrt5 : 2]` ([`constant_pencil_bivector`]).
//!
//! The Poisson pencil is pinned down by its defining properties: among all
//! Heisenberg-equivariant quadratic bivectors it is the unique family (up to
//! scale) that brackets to zero with itself and whose associated 2-form
//! vanishes exactly on the scroll `f^i = 0` of the same parameter. Both
//! properties are re-proved in the test suites.

use crate::exterior::{PolyMultiVector, ScalarMatrix};
use crate::multipoly::{MultiPoly, VarSet};
use crate::scalar::Scalar;

fn idx(i: i64) -> usize {
    i.rem_euclid(5) as usize
}

/// Substitution matrix of the index shift `sigma: z_k -> z_{k-1}`.
pub fn hm_sigma() -> ScalarMatrix {
    ScalarMatrix::from_fn(5, |i, j| {
        if j == (i + 4) % 5 {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    })
}

/// Substitution matrix of the character twist `tau: z_k -> eps^{-k} z_k`.
pub fn hm_tau() -> ScalarMatrix {
    ScalarMatrix::from_fn(5, |i, j| {
        if i == j {
            Scalar::zeta_pow(-(i as i64))
        } else {
            Scalar::zero()
        }
    })
}

/// The five cubics cutting the invariant quintic elliptic scroll of
/// parameter `[lam : mu]`:
///
/// ```text
/// f^i = lam^2 mu^2 z_i^3 + lam^3 mu (z_{i+1}^2 z_{i+3} + z_{i+2} z_{i+4}^2)
///     - lam mu^3 (z_{i+1} z_{i+2}^2 + z_{i+3}^2 z_{i+4})
///     - lam^4 z_i z_{i+1} z_{i+4} - mu^4 z_i z_{i+2} z_{i+3}
/// ```
///
/// The shift permutes them (`sigma^* f^i = f^{i-1}`) and `tau` rescales them
/// by `eps^{-3i}`, so their common zero locus is invariant.
pub fn scroll_cubics_in(vars: &VarSet, lam: &Scalar, mu: &Scalar) -> Vec<MultiPoly> {
    let l2 = lam * lam;
    let l3 = &l2 * lam;
    let l4 = &l3 * lam;
    let m2 = mu * mu;
    let m3 = &m2 * mu;
    let m4 = &m3 * mu;
    let l2m2 = &l2 * &m2;
    let l3m = &l3 * mu;
    let lm3 = lam * &m3;
    (0..5i64)
        .map(|i| {
            let z = |a: i64| MultiPoly::var(vars, idx(i + a));
            let t0 = (&(&z(0) * &z(0)) * &z(0)).scale(&l2m2);
            let t1 = (&(&(&z(1) * &z(1)) * &z(3)) + &(&z(2) * &(&z(4) * &z(4)))).scale(&l3m);
            let t2 = (&(&z(1) * &(&z(2) * &z(2))) + &(&(&z(3) * &z(3)) * &z(4))).scale(&lm3);
            let t3 = (&(&z(0) * &z(1)) * &z(4)).scale(&l4);
            let t4 = (&(&z(0) * &z(2)) * &z(3)).scale(&m4);
            &(&(&t0 + &t1) - &t2) - &(&t3 + &t4)
        })
        .collect()
}

/// [`scroll_cubics_in`] over the standard `z0..z4` variables.
pub fn scroll_cubics(lam: &Scalar, mu: &Scalar) -> Vec<MultiPoly> {
    scroll_cubics_in(&VarSet::projective5(), lam, mu)
}

/// Internal: the pencil bivector with the six slot coefficients supplied as
/// polynomials (scalars or parameter monomials).
fn pencil_from_slots(vars: &VarSet, slots: &[MultiPoly; 6]) -> PolyMultiVector {
    let z = |i: i64| MultiPoly::var(vars, idx(i));
    let mut rho = PolyMultiVector::new(2, 5, vars);
    for i in 0..5i64 {
        let s0 = &z(i) * &z(i);
        let s1 = &z(i + 1) * &z(i + 4);
        let s2 = &z(i + 2) * &z(i + 3);
        let ga = &(&(&slots[0] * &s0) + &(&slots[1] * &s1)) + &(&slots[2] * &s2);
        let gb = &(&(&slots[3] * &s0) + &(&slots[4] * &s1)) + &(&slots[5] * &s2);
        let mut pa = PolyMultiVector::new(2, 5, vars);
        pa.add_term(&[idx(i + 1) as u8, idx(i + 4) as u8], ga);
        let mut pb = PolyMultiVector::new(2, 5, vars);
        pb.add_term(&[idx(i + 2) as u8, idx(i + 3) as u8], gb);
        rho = rho
            .add(&pa)
            .expect("same vars")
            .add(&pb)
            .expect("same vars");
    }
    rho
}

fn pencil_slots(lam: &MultiPoly, mu: &MultiPoly) -> [MultiPoly; 6] {
    let five = Scalar::from_i64(5);
    let two = Scalar::from_i64(2);
    let l2 = lam * lam;
    let l3 = &l2 * lam;
    let l4 = &l3 * lam;
    let l5 = &l4 * lam;
    let m2 = mu * mu;
    let m3 = &m2 * mu;
    let m4 = &m3 * mu;
    let m5 = &m4 * mu;
    [
        (&l3 * &m2).scale(&five),
        -&(&l5 + &m5.scale(&two)),
        -&(lam * &m4).scale(&five),
        -&(&l2 * &m3).scale(&five),
        (&l4 * mu).scale(&five),
        &m5 - &l5.scale(&two),
    ]
}

/// The Heisenberg-invariant pencil of quadratic Poisson bivectors:
///
/// ```text
/// rho = sum_i [ 5 l^3 m^2 z_i^2 - (l^5 + 2 m^5) z_{i+1} z_{i+4}
///               - 5 l m^4 z_{i+2} z_{i+3} ] d_{i+1} ^ d_{i+4}
///     + sum_i [ -5 l^2 m^3 z_i^2 + 5 l^4 m z_{i+1} z_{i+4}
///               + (m^5 - 2 l^5) z_{i+2} z_{i+3} ] d_{i+2} ^ d_{i+3}
/// ```
///
/// `[rho, rho] = 0` for every parameter value, and the induced 2-form
/// `i_rho i_R vol` has its ten cubic coefficients inside the span of the
/// scroll cubics of the same `[lam : mu]`, so the member is singular exactly
/// along that scroll.
pub fn pencil_bivector(lam: &Scalar, mu: &Scalar) -> PolyMultiVector {
    let vars = VarSet::projective5();
    let l = MultiPoly::constant(&vars, lam.clone());
    let m = MultiPoly::constant(&vars, mu.clone());
    let slots = pencil_slots(&l, &m);
    pencil_from_slots(&vars, &slots)
}

/// [`pencil_bivector`] with `lambda`, `mu` as ring parameters, so pencil
/// identities can be verified identically rather than at samples.
pub fn pencil_bivector_symbolic() -> PolyMultiVector {
    let vars = VarSet::projective5_pencil();
    let lam = MultiPoly::var(&vars, 5);
    let mu = MultiPoly::var(&vars, 6);
    let slots = pencil_slots(&lam, &mu);
    pencil_from_slots(&vars, &slots)
}

/// The constant-coefficient bivector pencil
/// `sum_i (mu d_{i+2} ^ d_{i+3} + lam d_{i+1} ^ d_{i+4})`. Its wedge square
/// is `(+-2)(lam^2 - lam mu - mu^2)` times a fixed 4-vector, so it is
/// decomposable exactly at the golden-ratio parameters `[1 +- sqrt5 : 2]`
/// (and their `eps^k`-orbit), where it induces a degree-zero foliation by
/// planes.
pub fn constant_pencil_bivector(lam: &Scalar, mu: &Scalar) -> PolyMultiVector {
    let vars = VarSet::projective5();
    let mut s = PolyMultiVector::new(2, 5, &vars);
    for i in 0..5i64 {
        s.add_term(
            &[idx(i + 2) as u8, idx(i + 3) as u8],
            MultiPoly::constant(&vars, mu.clone()),
        );
        s.add_term(
            &[idx(i + 1) as u8, idx(i + 4) as u8],
            MultiPoly::constant(&vars, lam.clone()),
        );
    }
    s
}

/// Symbolic version of [`constant_pencil_bivector`].
pub fn constant_pencil_bivector_symbolic() -> PolyMultiVector {
    let vars = VarSet::projective5_pencil();
    let lam = MultiPoly::var(&vars, 5);
    let mu = MultiPoly::var(&vars, 6);
    let mut s = PolyMultiVector::new(2, 5, &vars);
    for i in 0..5i64 {
        s.add_term(&[idx(i + 2) as u8, idx(i + 3) as u8], mu.clone());
        s.add_term(&[idx(i + 1) as u8, idx(i + 4) as u8], lam.clone());
    }
    s
}
