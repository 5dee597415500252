//! Exact minimal-denominator searches over arbitrary-precision rationals.
//!
//! Three functions live here, each in increasing generality:
//!
//! * [`qmin`]: the smallest `q` such that some `p/q` lies in the open interval
//!   `(x - delta, x + delta)`;
//! * [`q_m`]: the smallest `q` such that some `p/q`, `p` in `Z^m`, lies in the
//!   open max-norm ball of radius `delta` around `x`;
//! * [`q_mn`]: the smallest `|q|_inf`, `q` in `Z^n \ {0}`, with
//!   `|Xq - p|_inf < delta |q|_inf` for some `p` in `Z^m`.
//!
//! `qmin` is computed by continued-fraction descent; [`qmin_bruteforce`] is an
//! independent scan over denominators used as its oracle.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Default cap on the denominator scanned by [`q_m`].
pub const DEFAULT_Q_CAP: u64 = 10_000_000;
/// Default cap on the shell radius scanned by [`q_mn`].
pub const DEFAULT_SHELL_CAP: u64 = 1_000;

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The exact dyadic rational equal to a finite `f64`.
pub fn from_f64(x: f64) -> Result<Rational> {
    Rational::from_float(x)
        .ok_or_else(|| Error::InvalidArgument(format!("non-finite value {x}")))
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenInterval {
    lo: Rational,
    hi: Rational,
}

impl OpenInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo >= hi {
            return Err(Error::EmptyInterval {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(Self { lo, hi })
    }

    /// `(center - radius, center + radius)`.
    pub fn around(center: &Rational, radius: &Rational) -> Result<Self> {
        if !radius.is_positive() {
            return Err(Error::NonPositiveDelta);
        }
        Self::new(center - radius, center + radius)
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / BigInt::from(2)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo < x && x < &self.hi
    }
}

/// A fraction `p/q` found inside a query interval.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FractionHit {
    pub p: BigInt,
    pub q: BigInt,
}

impl FractionHit {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Self {
        Self {
            p: p.into(),
            q: q.into(),
        }
    }

    pub fn value(&self) -> Rational {
        Rational::new(self.p.clone(), self.q.clone())
    }

    pub fn q_u64(&self) -> Option<u64> {
        self.q.to_u64()
    }
}

/// The fraction of least denominator in the open interval.
///
/// If integers lie inside, the one closest to the midpoint wins (the smaller
/// on a tie). Otherwise the least-denominator fraction is unique and found by
/// Stern-Brocot descent on the continued-fraction expansion of the endpoints.
pub fn simplest_in_interval(interval: &OpenInterval) -> FractionHit {
    let lo = interval.lo();
    let hi = interval.hi();
    let first: BigInt = lo.floor().to_integer() + 1;
    if Rational::from_integer(first.clone()) < *hi {
        let last = hi.ceil().to_integer() - 1;
        let mid = interval.midpoint();
        let below = mid.floor().to_integer();
        let frac = &mid - Rational::from_integer(below.clone());
        let nearest = if frac <= ratio(1, 2) { below } else { below + 1 };
        let p = nearest.clamp(first, last);
        return FractionHit::new(p, 1);
    }

    let shift = lo.floor().to_integer();
    let lo_num = lo.numer() - &shift * lo.denom();
    let hi_num = hi.numer() - &shift * hi.denom();
    let (num, den) = simplest_above(
        (lo_num, lo.denom().clone()),
        Some((hi_num, hi.denom().clone())),
    );
    FractionHit::new(shift * &den + num, den)
}

/// Least-denominator fraction in `(lo, hi)` with `lo >= 0`; `hi = None` means
/// `+inf`. Endpoints are unnormalized `(numerator, positive denominator)`
/// pairs. Returns `(numerator, denominator)`.
fn simplest_above(
    mut lo: (BigInt, BigInt),
    mut hi: Option<(BigInt, BigInt)>,
) -> (BigInt, BigInt) {
    let mut quotients: Vec<BigInt> = Vec::new();
    let (mut num, mut den) = loop {
        let floor = lo.0.div_floor(&lo.1);
        let candidate = &floor + 1u32;
        let fits = match &hi {
            None => true,
            Some((hn, hd)) => &candidate * hd < *hn,
        };
        if fits {
            break (candidate, BigInt::one());
        }
        // lo and hi share the integer part `floor`; recurse on reciprocals
        // of the fractional parts, which swaps the endpoints.
        let (hn, hd) = hi.take().expect("finite upper endpoint");
        let lo_rem = &lo.0 - &floor * &lo.1;
        let hi_rem = hn - &floor * &hd;
        hi = if lo_rem.is_zero() {
            None
        } else {
            Some((lo.1.clone(), lo_rem))
        };
        lo = (hd, hi_rem);
        quotients.push(floor);
    };
    for a in quotients.into_iter().rev() {
        let next = &a * &num + &den;
        den = num;
        num = next;
    }
    (num, den)
}

fn check_delta(delta: &Rational) -> Result<()> {
    if delta.is_positive() {
        Ok(())
    } else {
        Err(Error::NonPositiveDelta)
    }
}

/// Minimal denominator of a fraction in `(x - delta, x + delta)`.
pub fn qmin(x: &Rational, delta: &Rational) -> Result<FractionHit> {
    check_delta(delta)?;
    Ok(simplest_in_interval(&OpenInterval::around(x, delta)?))
}

/// Scan `q = 1, 2, ...` and test every candidate numerator.
pub fn qmin_bruteforce(x: &Rational, delta: &Rational) -> Result<FractionHit> {
    check_delta(delta)?;
    let interval = OpenInterval::around(x, delta)?;
    let mut q = BigInt::one();
    loop {
        let qr = Rational::from_integer(q.clone());
        let first = (interval.lo() * &qr).floor().to_integer();
        let last = (interval.hi() * &qr).ceil().to_integer();
        let mut best: Option<(Rational, BigInt)> = None;
        let mut p = first;
        while p <= last {
            let value = Rational::new(p.clone(), q.clone());
            if interval.contains(&value) {
                let dist = (&value - x).abs();
                let better = match &best {
                    None => true,
                    Some((d, _)) => dist < *d,
                };
                if better {
                    best = Some((dist, p.clone()));
                }
            }
            p += 1u32;
        }
        if let Some((_, p)) = best {
            return Ok(FractionHit::new(p, q));
        }
        q += 1u32;
    }
}

/// A vector of rationals together with a rational radius, rewritten over one
/// common denominator so the searches run on integers.
struct CommonScale {
    numerators: Vec<BigInt>,
    delta: BigInt,
    den: BigInt,
}

impl CommonScale {
    fn new<'a>(values: impl IntoIterator<Item = &'a Rational>, delta: &Rational) -> Self {
        let values: Vec<&Rational> = values.into_iter().collect();
        let den = values
            .iter()
            .map(|v| v.denom().clone())
            .fold(delta.denom().clone(), |acc, d| acc.lcm(&d));
        let scale = |v: &Rational| v.numer() * (&den / v.denom());
        Self {
            numerators: values.iter().map(|v| scale(v)).collect(),
            delta: scale(delta),
            den,
        }
    }

    /// True if every intermediate of a scan up to `cap`, with sums of `terms`
    /// products, fits comfortably in an `i128`.
    fn fits_i128(&self, cap: u64, terms: usize) -> bool {
        let bits = |x: &BigInt| x.bits();
        let cap_bits = 64 - cap.leading_zeros() as u64;
        let term_bits = 64 - (terms as u64).leading_zeros() as u64;
        let widest = self
            .numerators
            .iter()
            .map(bits)
            .chain([bits(&self.den)])
            .max()
            .unwrap_or(0);
        widest + cap_bits + term_bits + 2 < 126 && bits(&self.delta) + cap_bits + 2 < 126
    }

    fn to_i128(&self) -> (Vec<i128>, i128, i128) {
        let conv = |x: &BigInt| x.to_i128().expect("checked by fits_i128");
        (
            self.numerators.iter().map(conv).collect(),
            conv(&self.delta),
            conv(&self.den),
        )
    }
}

/// Distance from `r` (any integer) to the nearest multiple of `modulus`.
fn dist_to_multiple<T: Integer + Clone>(r: &T, modulus: &T) -> T {
    let rem = r.mod_floor(modulus);
    let other = modulus.clone() - rem.clone();
    if rem <= other {
        rem
    } else {
        other
    }
}

/// Smallest `q` with `|q x - p|_inf < q delta` for some integer vector `p`.
pub fn q_m(x: &[Rational], delta: &Rational) -> Result<u64> {
    q_m_capped(x, delta, DEFAULT_Q_CAP)
}

pub fn q_m_capped(x: &[Rational], delta: &Rational, q_max: u64) -> Result<u64> {
    check_delta(delta)?;
    if x.is_empty() {
        return Err(Error::Dimension("q_m needs at least one coordinate".into()));
    }
    let scale = CommonScale::new(x, delta);
    let found = if scale.fits_i128(q_max, 1) {
        let (a, e, l) = scale.to_i128();
        scan_denominators(&a, &e, &l, q_max)
    } else {
        scan_denominators(&scale.numerators, &scale.delta, &scale.den, q_max)
    };
    found.ok_or(Error::NotFound {
        cap: q_max.to_string(),
    })
}

fn scan_denominators<T: Integer + Clone>(a: &[T], e: &T, l: &T, q_max: u64) -> Option<u64> {
    let steps: Vec<T> = a.iter().map(|ai| ai.mod_floor(l)).collect();
    let mut residues = vec![T::zero(); a.len()];
    let mut threshold = T::zero();
    for q in 1..=q_max {
        threshold = threshold + e.clone();
        let mut inside = true;
        for (r, step) in residues.iter_mut().zip(&steps) {
            let mut next = r.clone() + step.clone();
            if next >= *l {
                next = next - l.clone();
            }
            *r = next;
            if dist_to_multiple(r, l) >= threshold {
                inside = false;
            }
        }
        if inside {
            return Some(q);
        }
    }
    None
}

/// Dense row-major matrix of rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix with {} entries",
                entries.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.cols + col]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }
}

/// Result of [`q_mn`]: the minimal shell radius and a canonical witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFormHit {
    pub qnorm: u64,
    pub q: Vec<i64>,
}

/// Ordering of witnesses inside a shell: first nonzero coordinate positive,
/// then lexicographic in `(|q_i|, q_i < 0)`.
pub fn witness_order(a: &[i64], b: &[i64]) -> Ordering {
    let key = |q: &[i64]| -> Vec<(u64, bool)> { q.iter().map(|&v| (v.unsigned_abs(), v < 0)).collect() };
    key(a).cmp(&key(b))
}

pub fn q_mn(x: &RationalMatrix, delta: &Rational) -> Result<LinearFormHit> {
    q_mn_capped(x, delta, DEFAULT_SHELL_CAP)
}

pub fn q_mn_capped(x: &RationalMatrix, delta: &Rational, shell_cap: u64) -> Result<LinearFormHit> {
    check_delta(delta)?;
    let scale = CommonScale::new(x.entries(), delta);
    let found = if scale.fits_i128(shell_cap, x.cols()) {
        let (a, e, l) = scale.to_i128();
        scan_shells(&a, x.rows(), x.cols(), &e, &l, shell_cap)
    } else {
        scan_shells(
            &scale.numerators,
            x.rows(),
            x.cols(),
            &scale.delta,
            &scale.den,
            shell_cap,
        )
    };
    found.ok_or(Error::NotFound {
        cap: shell_cap.to_string(),
    })
}

fn scan_shells<T: Integer + Clone + From<i64>>(
    a: &[T],
    rows: usize,
    cols: usize,
    e: &T,
    l: &T,
    shell_cap: u64,
) -> Option<LinearFormHit> {
    let mut q = vec![0i64; cols];
    for radius in 1..=shell_cap {
        let threshold = e.clone() * T::from(radius as i64);
        let mut best: Option<Vec<i64>> = None;
        for_each_canonical_in_shell(radius as i64, &mut q, &mut |q| {
            let inside = (0..rows).all(|i| {
                let dot = q.iter().enumerate().fold(T::zero(), |acc, (j, &qj)| {
                    acc + a[i * cols + j].clone() * T::from(qj)
                });
                dist_to_multiple(&dot, l) < threshold
            });
            if inside {
                let better = match &best {
                    None => true,
                    Some(b) => witness_order(q, b) == Ordering::Less,
                };
                if better {
                    best = Some(q.to_vec());
                }
            }
        });
        if let Some(q) = best {
            return Some(LinearFormHit {
                qnorm: radius,
                q,
            });
        }
    }
    None
}

/// Visit every `q` with `|q|_inf == radius` whose first nonzero coordinate is
/// positive. Only points on the shell are generated.
pub(crate) fn for_each_canonical_in_shell(radius: i64, q: &mut [i64], visit: &mut impl FnMut(&[i64])) {
    let dims = q.len();
    let mut ranges = Vec::with_capacity(dims);
    for lead in 0..dims {
        q[..lead].fill(0);
        let tail = lead + 1;
        q[lead] = radius;
        ranges.clear();
        ranges.resize(dims - tail, (-radius, radius));
        for_each_in_ranges(q, tail, &ranges, visit);
        for lead_value in 1..radius {
            q[lead] = lead_value;
            // the first tail coordinate reaching the radius sits at `edge`
            for edge in tail..dims {
                for side in [-radius, radius] {
                    ranges.clear();
                    ranges.resize(edge - tail, (1 - radius, radius - 1));
                    ranges.push((side, side));
                    ranges.resize(dims - tail, (-radius, radius));
                    for_each_in_ranges(q, tail, &ranges, visit);
                }
            }
        }
    }
}

/// Odometer over `q[start + k]` in `ranges[k]`, the last coordinate fastest.
fn for_each_in_ranges(q: &mut [i64], start: usize, ranges: &[(i64, i64)], visit: &mut impl FnMut(&[i64])) {
    if ranges.iter().any(|(a, b)| a > b) {
        return;
    }
    for (slot, range) in q[start..].iter_mut().zip(ranges) {
        *slot = range.0;
    }
    loop {
        visit(q);
        let mut k = ranges.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            if q[start + k] < ranges[k].1 {
                q[start + k] += 1;
                for (slot, range) in q[start + k + 1..].iter_mut().zip(&ranges[k + 1..]) {
                    *slot = range.0;
                }
                break;
            }
        }
    }
}
