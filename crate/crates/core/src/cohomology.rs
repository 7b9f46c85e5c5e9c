//! Cohomology dimension tables on `P^4`.
//!
//! * [`bott`] — the closed formula for `h^q(P^n, Omega^p(k))`, cross-checked
//!   in the test suites against Serre duality and Riemann-Roch.
//! * [`CohomologyTable`] — tabulated dimensions with closed-form tails,
//!   shipped as data files (`data/hm_e.tbl`, `data/hm_ee.tbl`) and
//!   re-validated on every load: each explicit row must match the Euler
//!   characteristic polynomial and the Serre pairing.
//! * [`vanishing`] — the vanishing ranges of `h^i(Omega^j (x) E(k))` and
//!   `h^i((E (x) E)(k))` as queryable interval predicates. A query outside a
//!   certified range answers `None`, never a fabricated non-vanishing.
//! * [`les_chase`] — a sound long-exact-sequence dimension chaser: it only
//!   applies exactness of zero-flanked segments and never guesses.

use crate::rational::{is_integer, rat, Rat};
use crate::unipoly::UniPoly;
use num_traits::Signed;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("unknown vanishing family `{0}`")]
    UnknownFamily(String),
    #[error("form degree p={p} out of range for P^{n}")]
    FormDegreeOutOfRange { p: usize, n: usize },
    #[error("family `{family}` needs j in 1..=3, got {j:?}")]
    BadFamilyParameter { family: String, j: Option<u32> },
    #[error("cohomology index {0} out of range")]
    IndexOutOfRange(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TableError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("missing directive `{0}`")]
    MissingDirective(&'static str),
    #[error("row k={k} is missing from the tabulated window")]
    MissingRow { k: i64 },
    #[error("row k={k}: alternating sum {got} does not match chi(k) = {expected}")]
    ChiMismatch { k: i64, got: i64, expected: String },
    #[error("Serre symmetry fails at k={k}, i={i}")]
    SerreMismatch { k: i64, i: usize },
    #[error("tail value chi({k}) = {value} is not a non-negative integer")]
    BadTailValue { k: i64, value: String },
    #[error("tail indices {high} and {low} are not Serre-dual")]
    TailIndexMismatch { high: usize, low: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChaseError {
    #[error(
        "inconsistent input: zero-flanked segment at {segment} has nonzero alternating sum {sum}"
    )]
    NonExactSegment { segment: String, sum: i64 },
    #[error("inconsistent input: solved dimension at {position} would be negative ({value})")]
    NegativeDimension { position: String, value: i64 },
}

/// One entry of a cohomology vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Entry {
    Known(u64),
    Unknown,
}

impl Entry {
    pub fn known(self) -> Option<u64> {
        match self {
            Entry::Known(v) => Some(v),
            Entry::Unknown => None,
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Known(v) => write!(f, "{v}"),
            Entry::Unknown => write!(f, "?"),
        }
    }
}

/// The vector `(h^0, ..., h^n)`, entries possibly unknown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohVector {
    entries: Vec<Entry>,
}

impl CohVector {
    pub fn known(values: &[u64]) -> Self {
        CohVector {
            entries: values.iter().map(|&v| Entry::Known(v)).collect(),
        }
    }

    pub fn unknown(len: usize) -> Self {
        CohVector {
            entries: vec![Entry::Unknown; len],
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, i: usize) -> Entry {
        self.entries[i]
    }

    pub fn set(&mut self, i: usize, v: Entry) {
        self.entries[i] = v;
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    /// `h^i` when every entry is known.
    pub fn known_values(&self) -> Option<Vec<u64>> {
        self.entries.iter().map(|e| e.known()).collect()
    }

    /// `sum (-1)^i h^i` when every entry is known.
    pub fn alternating_sum(&self) -> Option<i64> {
        let mut acc = 0i64;
        for (i, e) in self.entries.iter().enumerate() {
            let v = e.known()? as i64;
            acc += if i % 2 == 0 { v } else { -v };
        }
        Some(acc)
    }

    pub fn is_all_known(&self) -> bool {
        self.entries.iter().all(|e| e.known().is_some())
    }
}

impl fmt::Display for CohVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// `C(n, k)` as `u128`, zero outside the Pascal triangle.
fn binom(n: i64, k: i64) -> u128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    let mut acc: u128 = 1;
    for t in 0..k {
        acc = acc * (n - t) / (t + 1);
    }
    acc
}

/// Dimensions `h^q(P^n, Omega^p(k))` by the closed product formula:
/// `h^0 = C(k+n-p, k) C(k-1, p)` for `k > p`; `h^p = 1` for `k = 0`;
/// `h^n = C(p-k, -k) C(-k-1, n-p)` for `k < p - n`; zero otherwise.
pub fn bott(n: usize, p: usize, k: i64) -> Result<CohVector, CohomologyError> {
    if p > n {
        return Err(CohomologyError::FormDegreeOutOfRange { p, n });
    }
    let mut h = vec![0u64; n + 1];
    let (n_i, p_i) = (n as i64, p as i64);
    let fit = |v: u128| u64::try_from(v).expect("dimension exceeds u64");
    if k > p_i {
        h[0] = fit(binom(k + n_i - p_i, k) * binom(k - 1, p_i));
    } else if k == 0 {
        h[p] = 1;
    } else if k < p_i - n_i {
        h[n] = fit(binom(p_i - k, -k) * binom(-k - 1, n_i - p_i));
    }
    Ok(CohVector::known(&h))
}

/// A tabulated cohomology table with closed-form tails.
#[derive(Clone, Debug)]
pub struct CohomologyTable {
    pub name: String,
    pub n: usize,
    /// Serre pairing `h^i(k) = h^{n-i}(dual_twist - k)`.
    pub dual_twist: i64,
    /// Euler characteristic as a polynomial in the twist.
    pub chi: UniPoly,
    rows: BTreeMap<i64, Vec<u64>>,
    /// For `k >= high_from`, the vector is `chi(k)` at `high_index`, else 0.
    pub high_index: usize,
    pub high_from: i64,
    /// For `k <= low_to`, the vector is `chi(k)` at `low_index`, else 0.
    pub low_index: usize,
    pub low_to: i64,
}

impl CohomologyTable {
    /// Parse and validate a table from its text format.
    pub fn parse(text: &str) -> Result<Self, TableError> {
        let mut name = None;
        let mut n = None;
        let mut dual_twist = None;
        let mut chi = None;
        let mut high: Option<(usize, i64)> = None;
        let mut low: Option<(usize, i64)> = None;
        let mut rows = BTreeMap::new();

        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| TableError::Parse {
                line: lineno + 1,
                message,
            };
            let mut words = line.split_whitespace();
            match words.next().unwrap() {
                "table" => {
                    name = Some(
                        words
                            .next()
                            .ok_or_else(|| err("missing table name".into()))?
                            .to_string(),
                    );
                }
                "n" => {
                    n = Some(
                        words
                            .next()
                            .and_then(|w| w.parse::<usize>().ok())
                            .ok_or_else(|| err("bad ambient dimension".into()))?,
                    );
                }
                "dual-twist" => {
                    dual_twist = Some(
                        words
                            .next()
                            .and_then(|w| w.parse::<i64>().ok())
                            .ok_or_else(|| err("bad dual twist".into()))?,
                    );
                }
                "chi" => {
                    let den = words
                        .next()
                        .and_then(|w| w.parse::<i64>().ok())
                        .filter(|&d| d != 0)
                        .ok_or_else(|| err("bad chi denominator".into()))?;
                    let colon = words.next();
                    if colon != Some(":") {
                        return Err(err("expected `:` after denominator".into()));
                    }
                    let coeffs: Option<Vec<i64>> = words.map(|w| w.parse().ok()).collect();
                    let coeffs = coeffs.ok_or_else(|| err("bad chi coefficients".into()))?;
                    let poly =
                        UniPoly::from_coeffs(coeffs.iter().map(|&c| rat(c) / rat(den)).collect());
                    chi = Some(poly);
                }
                "tail" => {
                    let kind = words
                        .next()
                        .ok_or_else(|| err("missing tail kind".into()))?;
                    let idx = words
                        .next()
                        .and_then(|w| w.parse::<usize>().ok())
                        .ok_or_else(|| err("bad tail index".into()))?;
                    let kw = words.next();
                    let bound = words
                        .next()
                        .and_then(|w| w.parse::<i64>().ok())
                        .ok_or_else(|| err("bad tail bound".into()))?;
                    match (kind, kw) {
                        ("high", Some("from")) => high = Some((idx, bound)),
                        ("low", Some("to")) => low = Some((idx, bound)),
                        _ => {
                            return Err(err(
                                "tail must be `high <i> from <k>` or `low <i> to <k>`".into()
                            ))
                        }
                    }
                }
                "row" => {
                    let k = words
                        .next()
                        .and_then(|w| w.parse::<i64>().ok())
                        .ok_or_else(|| err("bad row twist".into()))?;
                    if words.next() != Some(":") {
                        return Err(err("expected `:` after row twist".into()));
                    }
                    let vals: Option<Vec<u64>> = words.map(|w| w.parse().ok()).collect();
                    let vals = vals.ok_or_else(|| err("bad row entries".into()))?;
                    rows.insert(k, vals);
                }
                other => return Err(err(format!("unknown directive `{other}`"))),
            }
        }

        let table = CohomologyTable {
            name: name.ok_or(TableError::MissingDirective("table"))?,
            n: n.ok_or(TableError::MissingDirective("n"))?,
            dual_twist: dual_twist.ok_or(TableError::MissingDirective("dual-twist"))?,
            chi: chi.ok_or(TableError::MissingDirective("chi"))?,
            high_index: high.ok_or(TableError::MissingDirective("tail high"))?.0,
            high_from: high.unwrap().1,
            low_index: low.ok_or(TableError::MissingDirective("tail low"))?.0,
            low_to: low.unwrap().1,
            rows,
        };
        table.validate()?;
        Ok(table)
    }

    fn chi_at(&self, k: i64) -> Rat {
        self.chi.eval_i64(k)
    }

    /// Integer value of `chi(k)` when it is a non-negative integer.
    fn tail_value(&self, k: i64) -> Result<u64, TableError> {
        let v = self.chi_at(k);
        if !is_integer(&v) || v.is_negative() {
            return Err(TableError::BadTailValue {
                k,
                value: crate::rational::display(&v),
            });
        }
        Ok(
            u64::try_from(v.numer().clone()).map_err(|_| TableError::BadTailValue {
                k,
                value: crate::rational::display(&v),
            })?,
        )
    }

    fn validate(&self) -> Result<(), TableError> {
        if self.low_index != self.n - self.high_index {
            return Err(TableError::TailIndexMismatch {
                high: self.high_index,
                low: self.low_index,
            });
        }
        // the explicit rows must exactly fill the window between the tails
        for k in (self.low_to + 1)..self.high_from {
            let row = self.rows.get(&k).ok_or(TableError::MissingRow { k })?;
            if row.len() != self.n + 1 {
                return Err(TableError::MissingRow { k });
            }
        }
        // each row's alternating sum equals chi(k)
        for (&k, row) in &self.rows {
            let mut alt = 0i64;
            for (i, &v) in row.iter().enumerate() {
                alt += if i % 2 == 0 { v as i64 } else { -(v as i64) };
            }
            let expected = self.chi_at(k);
            if rat(alt) != expected {
                return Err(TableError::ChiMismatch {
                    k,
                    got: alt,
                    expected: crate::rational::display(&expected),
                });
            }
        }
        // tail values must be non-negative integers on a sample window
        for k in self.high_from..=(self.high_from + 24) {
            self.tail_value(k)?;
        }
        for k in (self.low_to - 24)..=self.low_to {
            self.tail_value(k)?;
        }
        // Serre symmetry across the window (rows and tails together)
        for k in (self.low_to - 8)..=(self.high_from + 8) {
            let a = self.dimensions(k)?;
            let b = self.dimensions(self.dual_twist - k)?;
            for i in 0..=self.n {
                if a[i] != b[self.n - i] {
                    return Err(TableError::SerreMismatch { k, i });
                }
            }
        }
        Ok(())
    }

    /// The full dimension vector at twist `k` (explicit row or tail).
    pub fn dimensions(&self, k: i64) -> Result<Vec<u64>, TableError> {
        if let Some(row) = self.rows.get(&k) {
            return Ok(row.clone());
        }
        let mut out = vec![0u64; self.n + 1];
        if k >= self.high_from {
            out[self.high_index] = self.tail_value(k)?;
        } else if k <= self.low_to {
            out[self.low_index] = self.tail_value(k)?;
        } else {
            return Err(TableError::MissingRow { k });
        }
        Ok(out)
    }

    pub fn cohomology(&self, k: i64) -> CohVector {
        CohVector::known(&self.dimensions(k).expect("validated table"))
    }

    /// Twists of the explicitly tabulated rows, ascending.
    pub fn explicit_twists(&self) -> Vec<i64> {
        self.rows.keys().copied().collect()
    }
}

static HM_E: OnceLock<CohomologyTable> = OnceLock::new();
static HM_EE: OnceLock<CohomologyTable> = OnceLock::new();

/// The table of `h^i(E(k))` for the Horrocks-Mumford bundle.
pub fn hm_table() -> &'static CohomologyTable {
    HM_E.get_or_init(|| {
        CohomologyTable::parse(include_str!("../data/hm_e.tbl")).expect("embedded table is valid")
    })
}

/// The table of `h^i((E (x) E)(k))`.
pub fn hm_tensor_table() -> &'static CohomologyTable {
    HM_EE.get_or_init(|| {
        CohomologyTable::parse(include_str!("../data/hm_ee.tbl")).expect("embedded table is valid")
    })
}

/// `(h^0, ..., h^4)` of `E(k)`, for any twist.
pub fn hm_cohomology(k: i64) -> CohVector {
    hm_table().cohomology(k)
}

/// `(h^0, ..., h^4)` of `(E (x) E)(k)`, for any twist.
pub fn hm_tensor_cohomology(k: i64) -> CohVector {
    hm_tensor_table().cohomology(k)
}

/// A closed interval with optional bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Option<i64>,
    pub hi: Option<i64>,
}

impl Interval {
    pub fn new(lo: Option<i64>, hi: Option<i64>) -> Self {
        if let (Some(a), Some(b)) = (lo, hi) {
            assert!(a <= b, "malformed interval [{a}, {b}]");
        }
        Interval { lo, hi }
    }

    pub fn at_most(hi: i64) -> Self {
        Self::new(None, Some(hi))
    }

    pub fn at_least(lo: i64) -> Self {
        Self::new(Some(lo), None)
    }

    pub fn contains(&self, k: i64) -> bool {
        self.lo.map_or(true, |a| k >= a) && self.hi.map_or(true, |b| k <= b)
    }
}

/// A certified vanishing range: `h^index` of the family vanishes for every
/// twist in the union of intervals.
#[derive(Clone, Debug)]
pub struct VanishingRange {
    pub family: &'static str,
    pub index: usize,
    /// Form degree for the `Omega^j (x) E` family.
    pub j: Option<u32>,
    pub intervals: Vec<Interval>,
}

static RANGES: OnceLock<Vec<VanishingRange>> = OnceLock::new();

fn ranges() -> &'static [VanishingRange] {
    RANGES.get_or_init(|| {
        let mut v = Vec::new();
        // h^i(Omega^j (x) E(k)) for j = 1, 2, 3
        for j in 1..=3u32 {
            let jj = j as i64;
            v.push(VanishingRange {
                family: "omega-e",
                index: 0,
                j: Some(j),
                intervals: vec![Interval::at_most(jj)],
            });
            v.push(VanishingRange {
                family: "omega-e",
                index: 1,
                j: Some(j),
                intervals: vec![Interval::at_most(jj - 4), Interval::at_least(jj + 1)],
            });
            v.push(VanishingRange {
                family: "omega-e",
                index: 2,
                j: Some(j),
                intervals: vec![Interval::at_most(jj - 6), Interval::at_least(jj - 3)],
            });
            v.push(VanishingRange {
                family: "omega-e",
                index: 3,
                j: Some(j),
                intervals: vec![Interval::at_most(jj - 10), Interval::at_least(jj - 5)],
            });
            v.push(VanishingRange {
                family: "omega-e",
                index: 4,
                j: Some(j),
                intervals: vec![Interval::at_least(jj - 9)],
            });
        }
        // h^i((E (x) E)(k))
        let ee: [(usize, Vec<Interval>); 5] = [
            (0, vec![Interval::at_most(-6)]),
            (1, vec![Interval::at_most(-7), Interval::at_least(1)]),
            (2, vec![Interval::at_most(-11), Interval::at_least(-4)]),
            (3, vec![Interval::at_most(-16), Interval::at_least(-8)]),
            (4, vec![Interval::at_least(-9)]),
        ];
        for (index, intervals) in ee {
            v.push(VanishingRange {
                family: "e-e",
                index,
                j: None,
                intervals,
            });
        }
        v
    })
}

/// All registered vanishing ranges.
pub fn vanishing_ranges() -> &'static [VanishingRange] {
    ranges()
}

/// `Some(true)` when a registered range certifies `h^i = 0` at this twist;
/// `None` outside every certified range.
pub fn vanishing(
    family: &str,
    i: usize,
    j: Option<u32>,
    k: i64,
) -> Result<Option<bool>, CohomologyError> {
    if i > 4 {
        return Err(CohomologyError::IndexOutOfRange(i));
    }
    match family {
        "omega-e" => {
            let Some(jv) = j.filter(|&jv| (1..=3).contains(&jv)) else {
                return Err(CohomologyError::BadFamilyParameter {
                    family: family.into(),
                    j,
                });
            };
            Ok(lookup("omega-e", i, Some(jv), k))
        }
        "e-e" => Ok(lookup("e-e", i, None, k)),
        other => Err(CohomologyError::UnknownFamily(other.into())),
    }
}

fn lookup(family: &str, i: usize, j: Option<u32>, k: i64) -> Option<bool> {
    for r in ranges() {
        if r.family == family && r.index == i && r.j == j {
            if r.intervals.iter().any(|iv| iv.contains(k)) {
                return Some(true);
            }
        }
    }
    None
}

/// `vanishing("omega-e", i, Some(j), k)` without the string plumbing.
pub fn vanishing_omega_e(i: usize, j: u32, k: i64) -> Option<bool> {
    vanishing("omega-e", i, Some(j), k).expect("static family")
}

/// `vanishing("e-e", i, None, k)` without the string plumbing.
pub fn vanishing_ee(i: usize, k: i64) -> Option<bool> {
    vanishing("e-e", i, None, k).expect("static family")
}

/// Refine the cohomology vectors of a short exact sequence
/// `0 -> A -> B -> C -> 0` using only sound consequences of the long exact
/// sequence: any segment flanked by known zeros is exact, so its alternating
/// sum vanishes; a segment with exactly one unknown entry is solved.
/// Entries never change from `Known` to anything else, and unknowns outside
/// solvable segments stay unknown.
pub fn les_chase(
    a: &CohVector,
    b: &CohVector,
    c: &CohVector,
) -> Result<(CohVector, CohVector, CohVector), ChaseError> {
    let n1 = a.len();
    assert!(b.len() == n1 && c.len() == n1, "vectors of equal length");
    // long exact sequence positions: A^i, B^i, C^i at 3i, 3i+1, 3i+2
    let mut seq: Vec<Entry> = Vec::with_capacity(3 * n1);
    for i in 0..n1 {
        seq.push(a.entry(i));
        seq.push(b.entry(i));
        seq.push(c.entry(i));
    }
    let position_name = |pos: usize| {
        let names = ["A", "B", "C"];
        format!("{}^{}", names[pos % 3], pos / 3)
    };

    loop {
        let mut changed = false;
        // zero positions, with virtual zeros at both ends
        let mut zeros: Vec<i64> = vec![-1];
        zeros.extend(
            seq.iter()
                .enumerate()
                .filter(|(_, e)| **e == Entry::Known(0))
                .map(|(i, _)| i as i64),
        );
        zeros.push(seq.len() as i64);
        for w in zeros.windows(2) {
            let (z1, z2) = (w[0], w[1]);
            if z2 <= z1 + 1 {
                continue;
            }
            let run: Vec<usize> = ((z1 + 1) as usize..z2 as usize).collect();
            let mut alt = 0i64;
            let mut unknowns = Vec::new();
            for (off, &pos) in run.iter().enumerate() {
                match seq[pos] {
                    Entry::Known(v) => {
                        alt += if off % 2 == 0 { v as i64 } else { -(v as i64) };
                    }
                    Entry::Unknown => unknowns.push((off, pos)),
                }
            }
            match unknowns.len() {
                0 => {
                    if alt != 0 {
                        return Err(ChaseError::NonExactSegment {
                            segment: format!(
                                "{}..{}",
                                position_name(run[0]),
                                position_name(*run.last().unwrap())
                            ),
                            sum: alt,
                        });
                    }
                }
                1 => {
                    let (off, pos) = unknowns[0];
                    // alt + sign * x = 0
                    let sign = if off % 2 == 0 { 1 } else { -1 };
                    let x = -sign * alt;
                    if x < 0 {
                        return Err(ChaseError::NegativeDimension {
                            position: position_name(pos),
                            value: x,
                        });
                    }
                    seq[pos] = Entry::Known(x as u64);
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }

    let mut out = (
        CohVector::unknown(n1),
        CohVector::unknown(n1),
        CohVector::unknown(n1),
    );
    for i in 0..n1 {
        out.0.set(i, seq[3 * i]);
        out.1.set(i, seq[3 * i + 1]);
        out.2.set(i, seq[3 * i + 2]);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intersection::{
        hrr, tensor_rank4_rank2, twist, wedge2_rank4, wedge3_rank4, IntersectionClass, SheafClass,
    };

    fn hm() -> SheafClass {
        SheafClass::bundle(2, IntersectionClass::from_i64(4, &[1, 5, 10]), "E").unwrap()
    }

    #[test]
    fn bott_examples() {
        // h^0(Omega^1(2)) = 10
        assert_eq!(bott(4, 1, 2).unwrap(), CohVector::known(&[10, 0, 0, 0, 0]));
        // Hodge diagonal h^2(Omega^2) = 1
        assert_eq!(bott(4, 2, 0).unwrap(), CohVector::known(&[0, 0, 1, 0, 0]));
        // Serre-dual of the first: h^4(Omega^3(-2)) = 10
        assert_eq!(bott(4, 3, -2).unwrap(), CohVector::known(&[0, 0, 0, 0, 10]));
        assert!(matches!(
            bott(4, 5, 0),
            Err(CohomologyError::FormDegreeOutOfRange { .. })
        ));
    }

    #[test]
    fn bott_line_bundle_case() {
        // p = 0 reduces to h^i(O(k))
        assert_eq!(bott(4, 0, 3).unwrap(), CohVector::known(&[35, 0, 0, 0, 0]));
        assert_eq!(bott(4, 0, -5).unwrap(), CohVector::known(&[0, 0, 0, 0, 1]));
        assert_eq!(bott(4, 0, -3).unwrap(), CohVector::known(&[0; 5]));
    }

    #[test]
    fn bott_serre_duality() {
        for p in 0..=4usize {
            for k in -12..=12i64 {
                let a = bott(4, p, k).unwrap();
                let b = bott(4, 4 - p, -k).unwrap();
                for q in 0..=4 {
                    assert_eq!(
                        a.entry(q),
                        b.entry(4 - q),
                        "Serre duality fails at p={p} k={k} q={q}"
                    );
                }
            }
        }
    }

    #[test]
    fn bott_against_riemann_roch() {
        // alternating sums match chi(Omega^p(k)) computed in the
        // intersection ring via wedge powers of the cotangent class
        let omega1 = SheafClass::cotangent(4);
        let omega2 = wedge2_rank4(&omega1).unwrap();
        let omega3 = wedge3_rank4(&omega1).unwrap();
        for (p, class) in [(1, &omega1), (2, &omega2), (3, &omega3)] {
            for k in -8..=8i64 {
                let alt = bott(4, p, k).unwrap().alternating_sum().unwrap();
                let chi = hrr(&twist(class, k));
                assert_eq!(rat(alt), chi, "p={p} k={k}");
            }
        }
    }

    #[test]
    fn hm_table_rows() {
        assert_eq!(hm_cohomology(0), CohVector::known(&[4, 2, 0, 0, 0]));
        assert_eq!(hm_cohomology(-5), CohVector::known(&[0, 0, 2, 0, 0]));
        assert_eq!(hm_cohomology(1).entry(0), Entry::Known(35));
        assert_eq!(hm_cohomology(-11).entry(4), Entry::Known(35));
    }

    #[test]
    fn hm_tensor_table_rows() {
        assert_eq!(
            hm_tensor_cohomology(-7),
            CohVector::known(&[0, 0, 20, 0, 0])
        );
        assert_eq!(
            hm_tensor_cohomology(0),
            CohVector::known(&[136, 32, 0, 0, 0])
        );
        assert_eq!(
            hm_tensor_cohomology(-10),
            CohVector::known(&[0, 0, 2, 24, 1])
        );
    }

    #[test]
    fn hm_alternating_sums_match_riemann_roch() {
        let e = hm();
        for k in -20..=10i64 {
            let alt = hm_cohomology(k).alternating_sum().unwrap();
            assert_eq!(rat(alt), hrr(&twist(&e, k)), "k={k}");
        }
    }

    #[test]
    fn hm_serre_symmetry() {
        for k in -20..=10i64 {
            let a = hm_cohomology(k);
            let b = hm_cohomology(-10 - k);
            for i in 0..=4 {
                assert_eq!(a.entry(i), b.entry(4 - i), "k={k} i={i}");
            }
        }
        for k in -25..=10i64 {
            let a = hm_tensor_cohomology(k);
            let b = hm_tensor_cohomology(-15 - k);
            for i in 0..=4 {
                assert_eq!(a.entry(i), b.entry(4 - i), "k={k} i={i}");
            }
        }
    }

    #[test]
    fn tensor_table_against_omega_tensor_euler() {
        // chi(Omega^1 (x) E(k)) = 5 chi(E(k-1)) - chi(E(k)) and the direct
        // rank-8 tensor class agree
        let e = hm();
        let omega1 = SheafClass::cotangent(4);
        for k in -6..=6i64 {
            let lhs = hrr(&tensor_rank4_rank2(&omega1, &twist(&e, k)).unwrap());
            let rhs = rat(5) * hrr(&twist(&e, k - 1)) - hrr(&twist(&e, k));
            assert_eq!(lhs, rhs, "k={k}");
        }
    }

    #[test]
    fn table_loader_rejects_chi_mismatch() {
        let text = "\
table bad
n 4
dual-twist -10
chi 12 : 24 250 125 20 1
tail high 0 from 1
tail low 4 to -11
row 0 : 4 2 0 0 0
row -1 : 0 11 0 0 0
row -2 : 0 10 0 0 0
row -3 : 0 5 0 0 0
row -4 : 0 0 0 0 0
row -5 : 0 0 2 0 0
row -6 : 0 0 0 0 0
row -7 : 0 0 0 5 0
row -8 : 0 0 0 10 0
row -9 : 0 0 0 10 0
row -10 : 0 0 0 2 4
";
        assert!(matches!(
            CohomologyTable::parse(text),
            Err(TableError::ChiMismatch { k: -1, .. })
        ));
    }

    #[test]
    fn table_loader_rejects_serre_break() {
        // swap two h^1/h^3 values symmetrically so chi still matches but
        // the pairing h^1(-1) = h^3(-9) breaks
        let text = "\
table bad
n 4
dual-twist -10
chi 12 : 24 250 125 20 1
tail high 0 from 1
tail low 4 to -11
row 0 : 4 2 0 0 0
row -1 : 10 20 0 0 0
row -2 : 0 10 0 0 0
row -3 : 0 5 0 0 0
row -4 : 0 0 0 0 0
row -5 : 0 0 2 0 0
row -6 : 0 0 0 0 0
row -7 : 0 0 0 5 0
row -8 : 0 0 0 10 0
row -9 : 0 0 0 10 0
row -10 : 0 0 0 2 4
";
        assert!(matches!(
            CohomologyTable::parse(text),
            Err(TableError::SerreMismatch { .. })
        ));
    }

    #[test]
    fn table_loader_rejects_missing_row() {
        let text = "\
table bad
n 4
dual-twist -10
chi 12 : 24 250 125 20 1
tail high 0 from 1
tail low 4 to -11
row 0 : 4 2 0 0 0
";
        assert!(matches!(
            CohomologyTable::parse(text),
            Err(TableError::MissingRow { .. })
        ));
    }

    #[test]
    fn vanishing_examples() {
        assert_eq!(vanishing_omega_e(0, 2, 1), Some(true)); // k <= j
        assert_eq!(vanishing_ee(1, 1), Some(true)); // k >= 1
        assert_eq!(vanishing_ee(2, -8), None); // table says 20 there
        assert!(matches!(
            vanishing("nope", 0, None, 0),
            Err(CohomologyError::UnknownFamily(_))
        ));
        assert!(matches!(
            vanishing("omega-e", 0, Some(4), 0),
            Err(CohomologyError::BadFamilyParameter { .. })
        ));
    }

    #[test]
    fn vanishing_never_contradicts_tensor_table() {
        for i in 0..=4usize {
            for k in -16..=0i64 {
                if vanishing_ee(i, k) == Some(true) {
                    let row = hm_tensor_cohomology(k);
                    assert_eq!(row.entry(i), Entry::Known(0), "i={i} k={k}");
                }
            }
        }
    }

    #[test]
    fn les_chase_all_zero_middle() {
        // B = 0 forces A^{i+1} = C^i and A^0 = 0
        let b = CohVector::known(&[0; 5]);
        let c = CohVector::known(&[4, 2, 0, 7, 0]);
        let a = CohVector::unknown(5);
        let (a2, _, _) = les_chase(&a, &b, &c).unwrap();
        assert_eq!(a2, CohVector::known(&[0, 4, 2, 0, 7]));
    }

    #[test]
    fn les_chase_no_information_no_guess() {
        let u = CohVector::unknown(5);
        let (a2, b2, c2) = les_chase(&u, &u, &u).unwrap();
        assert_eq!(a2, u);
        assert_eq!(b2, u);
        assert_eq!(c2, u);
    }

    #[test]
    fn les_chase_detects_contradiction() {
        // 0 -> A -> B -> C -> ... with everything zero except b^0 = 1
        let a = CohVector::known(&[0; 5]);
        let mut b = CohVector::known(&[0; 5]);
        b.set(0, Entry::Known(1));
        let c = CohVector::known(&[0; 5]);
        assert!(matches!(
            les_chase(&a, &b, &c),
            Err(ChaseError::NonExactSegment { .. })
        ));
    }

    #[test]
    fn les_chase_euler_sequence_at_twist_zero() {
        // 0 -> Omega^1 (x) E -> E(-1)^5 -> E -> 0.
        // With h^2(Omega^1 (x) E) = 0 seeded from the vanishing ranges, the
        // chase solves h^0 = 0 and h^1 = 52, matching -chi = 52.
        let b = CohVector::known(&[0, 50, 0, 0, 0]); // 5 x E(-1)
        let c = hm_cohomology(0);
        let mut a = CohVector::unknown(5);
        assert_eq!(vanishing_omega_e(2, 1, 0), Some(true));
        a.set(2, Entry::Known(0));
        let (a2, _, _) = les_chase(&a, &b, &c).unwrap();
        assert_eq!(a2.entry(0), Entry::Known(0));
        assert_eq!(a2.entry(1), Entry::Known(52));
        assert_eq!(a2.entry(3), Entry::Known(0));
        assert_eq!(a2.entry(4), Entry::Known(0));
        // cross-check against Riemann-Roch on the rank-8 tensor class
        let chi = hrr(&tensor_rank4_rank2(&SheafClass::cotangent(4), &hm()).unwrap());
        assert_eq!(chi, rat(-52));
    }

    #[test]
    fn les_chase_euler_sequence_at_twist_one_stays_sound() {
        // At k = 1 the chase alone cannot pin h^0(Omega^1 (x) E(1)): the
        // segment has two unknowns, and no sound rule applies. It must
        // remain Unknown rather than being guessed.
        let b = CohVector::known(&[20, 10, 0, 0, 0]); // 5 x E(0)
        let c = hm_cohomology(1);
        let (a2, _, _) = les_chase(&CohVector::unknown(5), &b, &c).unwrap();
        assert_eq!(a2.entry(0), Entry::Unknown);
        assert_eq!(a2.entry(1), Entry::Unknown);
        // the tail entries are still squeezed to zero
        assert_eq!(a2.entry(3), Entry::Known(0));
        assert_eq!(a2.entry(4), Entry::Known(0));
    }

    #[test]
    fn les_chase_detects_negative_dimension() {
        // 0 -> A -> B -> C with a^0 = 5, b^0 = 3, a^1 = 0 forces c^0 = -2
        let mut a = CohVector::known(&[0; 5]);
        a.set(0, Entry::Known(5));
        let mut b = CohVector::known(&[0; 5]);
        b.set(0, Entry::Known(3));
        let mut c = CohVector::known(&[0; 5]);
        c.set(0, Entry::Unknown);
        assert!(matches!(
            les_chase(&a, &b, &c),
            Err(ChaseError::NegativeDimension { .. })
        ));
    }

    #[test]
    fn les_chase_idempotent_and_monotone() {
        let b = CohVector::known(&[0, 50, 0, 0, 0]);
        let c = hm_cohomology(0);
        let mut a = CohVector::unknown(5);
        a.set(2, Entry::Known(0));
        let first = les_chase(&a, &b, &c).unwrap();
        let second = les_chase(&first.0, &first.1, &first.2).unwrap();
        assert_eq!(first, second);
        // monotone: every known input entry survives unchanged
        for i in 0..5 {
            if let Entry::Known(v) = a.entry(i) {
                assert_eq!(first.0.entry(i), Entry::Known(v));
            }
        }
    }

    use crate::rational::rat;
}
