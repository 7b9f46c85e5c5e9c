//! Truncated intersection calculus on complex projective space.
//!
//! The cohomology ring of `P^n` is `Z[h]/h^{n+1}`; an [`IntersectionClass`]
//! stores the `n+1` rational coefficients of `h^0..h^n` and every product is
//! truncated at `h^{n+1}`. A [`SheafClass`] is a rank together with a total
//! Chern class with constant term 1; formal differences are allowed, honest
//! bundles can be built through [`SheafClass::bundle`] which checks that
//! `c_i = 0` above the rank.
//!
//! All scalars are exact rationals.

use crate::rational::{binomial, display, is_integer, pow, rat, Rat};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IntersectionError {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("constant term must be 1 to invert")]
    NonUnitConstant,
    #[error("expected rank {expected}, found {found}")]
    RankMismatch { expected: u32, found: u32 },
    #[error("c_{index} = {value} is nonzero beyond the stated rank")]
    ClassBeyondRank { index: usize, value: String },
    #[error("Euler characteristic {0} is not an integer")]
    NonIntegralChi(String),
    #[error("ideal-sheaf degree must be >= 1, got {0}")]
    InvalidIdealDegree(i64),
    #[error("first Chern class {0} is not an integer")]
    NonIntegralC1(String),
}

type Result<T> = std::result::Result<T, IntersectionError>;

/// Which presentation of a dimension-two distribution an Eagon-Northcott
/// computation starts from: a rank-2 subsheaf of the tangent bundle or of
/// the cotangent bundle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Tangent,
    Conormal,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Tangent => write!(f, "tangent"),
            Side::Conormal => write!(f, "conormal"),
        }
    }
}

/// A degree-truncated polynomial in the hyperplane class `h` on `P^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionClass {
    n: usize,
    coeffs: Vec<Rat>,
}

impl IntersectionClass {
    /// The zero class.
    pub fn zero(n: usize) -> Self {
        IntersectionClass {
            n,
            coeffs: vec![rat(0); n + 1],
        }
    }

    /// The unit class 1.
    pub fn one(n: usize) -> Self {
        let mut c = Self::zero(n);
        c.coeffs[0] = rat(1);
        c
    }

    /// Class from rational coefficients of `h^0..h^n` (padded/truncated).
    pub fn from_coeffs(n: usize, coeffs: Vec<Rat>) -> Self {
        let mut c = coeffs;
        c.resize(n + 1, rat(0));
        c.truncate(n + 1);
        IntersectionClass { n, coeffs: c }
    }

    pub fn from_i64(n: usize, coeffs: &[i64]) -> Self {
        Self::from_coeffs(n, coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// `1 + k h`, the total Chern class of `O(k)`.
    pub fn line(n: usize, k: i64) -> Self {
        let mut c = Self::one(n);
        if n >= 1 {
            c.coeffs[1] = rat(k);
        }
        c
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `h^i` (zero above the truncation).
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(|| rat(0))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(IntersectionError::DimensionMismatch(self.n, other.n));
        }
        Ok(())
    }

    /// Truncated product. Errors on ambient-dimension mismatch.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let mut out = Self::zero(self.n);
        for i in 0..=self.n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(self.n - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                out.coeffs[i + j] += &self.coeffs[i] * &other.coeffs[j];
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse modulo `h^{n+1}`; requires constant term 1.
    pub fn inverse(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(IntersectionError::NonUnitConstant);
        }
        let mut inv = Self::one(self.n);
        for k in 1..=self.n {
            // b_k = -sum_{j=1..k} c_j b_{k-j}
            let mut acc = rat(0);
            for j in 1..=k {
                acc += &self.coeffs[j] * &inv.coeffs[k - j];
            }
            inv.coeffs[k] = -acc;
        }
        Ok(inv)
    }

    pub fn scale(&self, s: &Rat) -> Self {
        IntersectionClass {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut out = Self::one(self.n);
        for _ in 0..e {
            out = out.try_mul(self)?;
        }
        Ok(out)
    }
}

impl Add for &IntersectionClass {
    type Output = IntersectionClass;
    fn add(self, rhs: &IntersectionClass) -> IntersectionClass {
        assert_eq!(self.n, rhs.n, "ambient dimension mismatch");
        IntersectionClass {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &IntersectionClass {
    type Output = IntersectionClass;
    fn sub(self, rhs: &IntersectionClass) -> IntersectionClass {
        self + &(-rhs)
    }
}

impl Neg for &IntersectionClass {
    type Output = IntersectionClass;
    fn neg(self) -> IntersectionClass {
        IntersectionClass {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &IntersectionClass {
    type Output = IntersectionClass;
    fn mul(self, rhs: &IntersectionClass) -> IntersectionClass {
        self.try_mul(rhs).expect("ambient dimension mismatch")
    }
}

impl fmt::Display for IntersectionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{}", display(c))?,
                1 => write!(f, "({})h", display(c))?,
                _ => write!(f, "({})h^{}", display(c), i)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Rank plus total Chern class: the formal stand-in for a coherent sheaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheafClass {
    rank: u32,
    chern: IntersectionClass,
    label: String,
}

impl SheafClass {
    /// A formal class: only `c_0 = 1` is required, so differences of honest
    /// classes are representable.
    pub fn formal(rank: u32, chern: IntersectionClass, label: &str) -> Self {
        assert!(
            chern.coeff(0).is_one(),
            "total Chern class must have constant term 1"
        );
        SheafClass {
            rank,
            chern,
            label: label.to_string(),
        }
    }

    /// An honest sheaf class: additionally checks `c_i = 0` for `i > rank`.
    pub fn bundle(rank: u32, chern: IntersectionClass, label: &str) -> Result<Self> {
        for i in (rank as usize + 1)..=chern.ambient_dim() {
            if !chern.coeff(i).is_zero() {
                return Err(IntersectionError::ClassBeyondRank {
                    index: i,
                    value: display(&chern.coeff(i)),
                });
            }
        }
        Ok(Self::formal(rank, chern, label))
    }

    /// `O(k)` on `P^n`.
    pub fn line_bundle(n: usize, k: i64) -> Self {
        Self::formal(1, IntersectionClass::line(n, k), &format!("O({k})"))
    }

    /// Trivial bundle of the given rank.
    pub fn trivial(n: usize, rank: u32) -> Self {
        Self::formal(rank, IntersectionClass::one(n), &format!("O^{rank}"))
    }

    /// Tangent bundle of `P^n`: `c = (1+h)^{n+1}` truncated, rank `n`.
    pub fn tangent(n: usize) -> Self {
        let c = IntersectionClass::line(n, 1)
            .pow(n as u32 + 1)
            .expect("same ambient");
        Self::formal(n as u32, c, &format!("TP{n}"))
    }

    /// Cotangent bundle of `P^n`: the dual of the tangent bundle.
    pub fn cotangent(n: usize) -> Self {
        let mut s = dual(&Self::tangent(n));
        s.label = format!("Omega1(P{n})");
        s
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn chern(&self) -> &IntersectionClass {
        &self.chern
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = label.to_string();
        self
    }

    pub fn ambient_dim(&self) -> usize {
        self.chern.ambient_dim()
    }

    /// `c_i` as a rational.
    pub fn c(&self, i: usize) -> Rat {
        self.chern.coeff(i)
    }

    /// `c_i` as an `i64`, when it is a small integer.
    pub fn c_i64(&self, i: usize) -> Option<i64> {
        let v = self.c(i);
        is_integer(&v).then(|| v.numer().try_into().ok()).flatten()
    }

    fn expect_rank(&self, expected: u32) -> Result<()> {
        if self.rank != expected {
            return Err(IntersectionError::RankMismatch {
                expected,
                found: self.rank,
            });
        }
        Ok(())
    }
}

impl fmt::Display for SheafClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (rank {}): {}", self.label, self.rank, self.chern)
    }
}

/// Chern class of `s (x) O(k)`: `c_i(E(k)) = sum_j C(rank-j, i-j) k^{i-j} c_j(E)`.
///
/// The binomial is the generalized one, so the rule is also correct for
/// non-locally-free classes such as ideal sheaves of curves.
pub fn twist(s: &SheafClass, k: i64) -> SheafClass {
    let n = s.ambient_dim();
    let r = s.rank as i64;
    let mut coeffs = vec![rat(0); n + 1];
    for i in 0..=n {
        let mut acc = rat(0);
        for j in 0..=i {
            let b = binomial(r - j as i64, (i - j) as u32);
            if b.is_zero() {
                continue;
            }
            acc += b * pow(&rat(k), (i - j) as u32) * s.chern.coeff(j);
        }
        coeffs[i] = acc;
    }
    SheafClass {
        rank: s.rank,
        chern: IntersectionClass::from_coeffs(n, coeffs),
        label: format!("{}({k})", s.label),
    }
}

/// Dual class: `c_i -> (-1)^i c_i`, rank unchanged.
pub fn dual(s: &SheafClass) -> SheafClass {
    let n = s.ambient_dim();
    let coeffs = (0..=n)
        .map(|i| {
            if i % 2 == 0 {
                s.chern.coeff(i)
            } else {
                -s.chern.coeff(i)
            }
        })
        .collect();
    SheafClass {
        rank: s.rank,
        chern: IntersectionClass::from_coeffs(n, coeffs),
        label: format!("{}*", s.label),
    }
}

/// The two known members of a short exact sequence `0 -> A -> B -> C -> 0`.
pub enum SesKnown<'a> {
    /// Know `A` and `B`, solve for `C`.
    AB(&'a SheafClass, &'a SheafClass),
    /// Know `A` and `C`, solve for `B`.
    AC(&'a SheafClass, &'a SheafClass),
    /// Know `B` and `C`, solve for `A`.
    BC(&'a SheafClass, &'a SheafClass),
}

/// Solve the Whitney relation `c(B) = c(A) c(C)` for the missing member.
pub fn ses_third(known: SesKnown<'_>) -> Result<SheafClass> {
    match known {
        SesKnown::AB(a, b) => {
            let chern = b.chern.try_mul(&a.chern.inverse()?)?;
            Ok(SheafClass {
                rank: b.rank - a.rank,
                chern,
                label: format!("({})/({})", b.label, a.label),
            })
        }
        SesKnown::AC(a, c) => {
            let chern = a.chern.try_mul(&c.chern)?;
            Ok(SheafClass {
                rank: a.rank + c.rank,
                chern,
                label: format!("({})(+)({})", a.label, c.label),
            })
        }
        SesKnown::BC(b, c) => {
            let chern = b.chern.try_mul(&c.chern.inverse()?)?;
            Ok(SheafClass {
                rank: b.rank - c.rank,
                chern,
                label: format!("ker({} -> {})", b.label, c.label),
            })
        }
    }
}

/// `c(wedge^2 E)` for rank-4 `E`; the result has rank 6.
pub fn wedge2_rank4(s: &SheafClass) -> Result<SheafClass> {
    s.expect_rank(4)?;
    let n = s.ambient_dim();
    let (c1, c2, c3, c4) = (s.c(1), s.c(2), s.c(3), s.c(4));
    let coeffs = vec![
        rat(1),
        rat(3) * &c1,
        rat(3) * &c1 * &c1 + rat(2) * &c2,
        pow(&c1, 3) + rat(4) * &c1 * &c2,
        rat(2) * &c1 * &c1 * &c2 + &c2 * &c2 + &c1 * &c3 - rat(4) * &c4,
    ];
    Ok(SheafClass {
        rank: 6,
        chern: IntersectionClass::from_coeffs(n, coeffs),
        label: format!("wedge2({})", s.label),
    })
}

/// `c(wedge^3 E)` for rank-4 `E`; the result has rank 4.
pub fn wedge3_rank4(s: &SheafClass) -> Result<SheafClass> {
    s.expect_rank(4)?;
    let n = s.ambient_dim();
    let (c1, c2, c3, c4) = (s.c(1), s.c(2), s.c(3), s.c(4));
    let coeffs = vec![
        rat(1),
        rat(3) * &c1,
        rat(3) * &c1 * &c1 + &c2,
        pow(&c1, 3) + rat(2) * &c1 * &c2 - &c3,
        &c1 * &c1 * &c2 - &c1 * &c3 + &c4,
    ];
    Ok(SheafClass {
        rank: 4,
        chern: IntersectionClass::from_coeffs(n, coeffs),
        label: format!("wedge3({})", s.label),
    })
}

/// `c(Sym^2 E)` for rank-2 `E`; the result has rank 3.
pub fn sym2_rank2(s: &SheafClass) -> Result<SheafClass> {
    s.expect_rank(2)?;
    let n = s.ambient_dim();
    let (c1, c2) = (s.c(1), s.c(2));
    let coeffs = vec![
        rat(1),
        rat(3) * &c1,
        rat(2) * &c1 * &c1 + rat(4) * &c2,
        rat(4) * &c1 * &c2,
    ];
    Ok(SheafClass {
        rank: 3,
        chern: IntersectionClass::from_coeffs(n, coeffs),
        label: format!("sym2({})", s.label),
    })
}

/// `c(E (x) F)` for `E` of rank 4 and `F` of rank 2; the result has rank 8.
///
/// `e_i`, `f_i` below are the Chern classes of `E` and `F`; the closed form
/// agrees with the formal-splitting expansion (see [`crate::splitting`]).
pub fn tensor_rank4_rank2(e: &SheafClass, f: &SheafClass) -> Result<SheafClass> {
    e.expect_rank(4)?;
    f.expect_rank(2)?;
    e.chern.check_same_dim(&f.chern)?;
    let n = e.ambient_dim();
    let (e1, e2, e3, e4) = (e.c(1), e.c(2), e.c(3), e.c(4));
    let (f1, f2) = (f.c(1), f.c(2));
    let c1 = rat(2) * &e1 + rat(4) * &f1;
    let c2 = &e1 * &e1 + rat(7) * &e1 * &f1 + rat(6) * &f1 * &f1 + rat(2) * &e2 + rat(4) * &f2;
    let c3 = rat(3) * &e1 * &e1 * &f1
        + rat(9) * &e1 * &f1 * &f1
        + rat(4) * pow(&f1, 3)
        + rat(2) * &e1 * &e2
        + rat(6) * &e2 * &f1
        + rat(6) * &e1 * &f2
        + rat(12) * &f1 * &f2
        + rat(2) * &e3;
    let c4 = rat(3) * &e1 * &e1 * &f1 * &f1
        + rat(5) * &e1 * pow(&f1, 3)
        + pow(&f1, 4)
        + rat(5) * &e1 * &e2 * &f1
        + rat(7) * &e2 * &f1 * &f1
        + rat(3) * &e1 * &e1 * &f2
        + rat(15) * &e1 * &f1 * &f2
        + rat(12) * &f1 * &f1 * &f2
        + &e2 * &e2
        + rat(2) * &e1 * &e3
        + rat(5) * &e3 * &f1
        + rat(2) * &e2 * &f2
        + rat(6) * &f2 * &f2
        + rat(2) * &e4;
    Ok(SheafClass {
        rank: 8,
        chern: IntersectionClass::from_coeffs(n, vec![rat(1), c1, c2, c3, c4]),
        label: format!("({})(x)({})", e.label, f.label),
    })
}

/// Chern class of the ideal sheaf of a curve of the given degree and
/// arithmetic genus in `P^4`: `c_1 = c_2 = 0`, `c_3 = -2 deg`,
/// `c_4 = 6 - 15 deg - 6 pa`.
pub fn ideal_sheaf_class(deg: i64, pa: i64) -> Result<SheafClass> {
    if deg < 1 {
        return Err(IntersectionError::InvalidIdealDegree(deg));
    }
    let coeffs = vec![
        rat(1),
        rat(0),
        rat(0),
        rat(-2 * deg),
        rat(6 - 15 * deg - 6 * pa),
    ];
    Ok(SheafClass {
        rank: 1,
        chern: IntersectionClass::from_coeffs(4, coeffs),
        label: format!("I(deg={deg},pa={pa})"),
    })
}

/// Degree-indexed vector of exact rationals (Chern character, Todd class).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterVector {
    components: Vec<Rat>,
}

impl CharacterVector {
    pub fn components(&self) -> &[Rat] {
        &self.components
    }

    pub fn component(&self, k: usize) -> Rat {
        self.components.get(k).cloned().unwrap_or_else(|| rat(0))
    }
}

/// Chern character `ch_0..ch_n` via Newton's identities on the Chern classes.
pub fn chern_character(s: &SheafClass) -> CharacterVector {
    let n = s.ambient_dim();
    // power sums p_k of the Chern roots
    let mut p = vec![rat(0); n + 1];
    for k in 1..=n {
        // p_k = c1 p_{k-1} - c2 p_{k-2} + ... - (-1)^k k c_k
        let mut acc = rat(0);
        for j in 1..k {
            let sign = if j % 2 == 1 { rat(1) } else { rat(-1) };
            acc += sign * s.chern.coeff(j) * &p[k - j];
        }
        let sign = if k % 2 == 1 { rat(1) } else { rat(-1) };
        acc += sign * rat(k as i64) * s.chern.coeff(k);
        p[k] = acc;
    }
    let mut components = vec![rat(0); n + 1];
    components[0] = rat(s.rank as i64);
    let mut factorial = rat(1);
    for k in 1..=n {
        factorial *= rat(k as i64);
        components[k] = &p[k] / &factorial;
    }
    CharacterVector { components }
}

/// Todd class of the tangent bundle of `P^n`, i.e. `(h / (1 - e^{-h}))^{n+1}`
/// truncated at `h^n`.
pub fn todd_tangent(n: usize) -> CharacterVector {
    // s(x) = (1 - e^{-x})/x = sum (-1)^k x^k / (k+1)!
    let mut s = vec![rat(0); n + 1];
    let mut fact = rat(1);
    for (k, sk) in s.iter_mut().enumerate() {
        fact *= rat(k as i64 + 1);
        let sign = if k % 2 == 0 { rat(1) } else { rat(-1) };
        *sk = sign / &fact;
    }
    // t = 1/s by power-series inversion
    let mut t = vec![rat(0); n + 1];
    t[0] = rat(1);
    for k in 1..=n {
        let mut acc = rat(0);
        for j in 1..=k {
            acc += &s[j] * &t[k - j];
        }
        t[k] = -acc;
    }
    // td = t^{n+1}
    let t_class = IntersectionClass::from_coeffs(n, t);
    let td = t_class.pow(n as u32 + 1).expect("same ambient");
    CharacterVector {
        components: td.coeffs().to_vec(),
    }
}

/// Hirzebruch-Riemann-Roch: the `h^n` coefficient of `ch(s) td(TP^n)`.
pub fn hrr(s: &SheafClass) -> Rat {
    let n = s.ambient_dim();
    let ch = chern_character(s);
    let td = todd_tangent(n);
    let mut acc = rat(0);
    for k in 0..=n {
        acc += ch.component(k) * td.component(n - k);
    }
    acc
}

/// Riemann-Roch with the integrality check for honest sheaf classes.
pub fn hrr_integral(s: &SheafClass) -> Result<BigInt> {
    let chi = hrr(s);
    if !is_integer(&chi) {
        return Err(IntersectionError::NonIntegralChi(display(&chi)));
    }
    Ok(chi.numer().clone())
}

/// True iff `c_1^2 - 4 c_2 >= 0`, i.e. stability of a rank-2 bundle with
/// these Chern numbers would contradict Bogomolov's inequality.
pub fn bogomolov_violated(c1: i64, c2: i64) -> bool {
    let (c1, c2) = (c1 as i128, c2 as i128);
    c1 * c1 - 4 * c2 >= 0
}

/// Schwarzenberger condition for rank-2 topological bundles on `P^4`:
/// `c_2 (c_2 + 1 - 3 c_1 - 2 c_1^2) = 0 mod 12`.
pub fn schwarzenberger_s42(c1: i64, c2: i64) -> bool {
    let (c1, c2) = (c1 as i128, c2 as i128);
    (c2 * (c2 + 1 - 3 * c1 - 2 * c1 * c1)).rem_euclid(12) == 0
}

/// Twist a rank-2 class so that `c_1` lands in `{0, -1}`; returns the
/// normalized class and the twist applied.
pub fn normalize_rank2(s: &SheafClass) -> Result<(SheafClass, i64)> {
    s.expect_rank(2)?;
    let c1 = s
        .c_i64(1)
        .ok_or_else(|| IntersectionError::NonIntegralC1(display(&s.c(1))))?;
    let t = if c1.rem_euclid(2) == 0 {
        -c1 / 2
    } else {
        -(c1 + 1) / 2
    };
    Ok((twist(s, t), t))
}

/// Total Chern class of the twisted ideal sheaf of the singular scheme of a
/// dimension-two distribution on `P^4`, computed from the Eagon-Northcott
/// resolution of the degeneracy locus.
///
/// For the tangent presentation (rank-2 `TF`, map `Omega^1 -> TF*`), the
/// Whitney product gives `c(I_Z(d-2))` with `d = 2 - c_1(TF)`:
///
/// ```text
/// c(I_Z(d-2)) = c(Sym^2(TF)(-5)) . c(Omega^2) . c(Omega^3 (x) TF)^-1
/// ```
///
/// For the conormal presentation (rank-2 `N*`, map `TP^4 -> N`), with
/// `w = c_1(N*) + 5`:
///
/// ```text
/// c(I_Z) = c(Sym^2(N*)(w)) . c(Omega^2(w)) . c((Omega^1 (x) N*)(w))^-1
/// ```
pub fn eagon_northcott_ideal_class(s: &SheafClass, side: Side) -> Result<IntersectionClass> {
    s.expect_rank(2)?;
    if s.ambient_dim() != 4 {
        return Err(IntersectionError::DimensionMismatch(s.ambient_dim(), 4));
    }
    let omega1 = SheafClass::cotangent(4);
    match side {
        Side::Tangent => {
            let sym = twist(&sym2_rank2(s)?, -5);
            let omega2 = wedge2_rank4(&omega1)?;
            let middle = tensor_rank4_rank2(&wedge3_rank4(&omega1)?, s)?;
            sym.chern
                .try_mul(&omega2.chern)?
                .try_mul(&middle.chern.inverse()?)
        }
        Side::Conormal => {
            let n1 = s
                .c_i64(1)
                .ok_or_else(|| IntersectionError::NonIntegralC1(display(&s.c(1))))?;
            let w = n1 + 5;
            let sym = twist(&sym2_rank2(s)?, w);
            let omega2 = twist(&wedge2_rank4(&omega1)?, w);
            let middle = twist(&tensor_rank4_rank2(&omega1, s)?, w);
            sym.chern
                .try_mul(&omega2.chern)?
                .try_mul(&middle.chern.inverse()?)
        }
    }
}

/// Invariants read off a twisted ideal-sheaf class `c(I_Z(k))` of a curve
/// `Z` in `P^4`: the untwisting and the Chern identities
/// `c_3(I_Z) = -2 deg Z`, `c_4(I_Z) = 6 - 15 deg Z - 6 pa`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveFromIdealClass {
    /// The twist `k` in `c(I_Z(k))`, read from the `h` coefficient.
    pub twist: Rat,
    pub deg_z: Rat,
    pub pa: Rat,
}

pub fn curve_invariants_from_ideal_class(class: &IntersectionClass) -> CurveFromIdealClass {
    let k = class.coeff(1);
    let c3 = class.coeff(3);
    // c_4(I_Z) from c_4(I_Z(k)) = c_4 - 2k c_3
    let c4 = class.coeff(4) + rat(2) * &k * &c3;
    let deg_z = -&c3 / rat(2);
    let pa = (rat(6) - rat(15) * &deg_z - c4) / rat(6);
    CurveFromIdealClass {
        twist: k,
        deg_z,
        pa,
    }
}
