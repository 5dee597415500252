use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::origami::Origami;
use super::trace::min_multiple;
use crate::error::{Error, Result};
use crate::exact::{from_f64, qmin, ratio, Rational};
use crate::experiments::{check_count, check_delta, Run, Sample};
use crate::par::{map_indices, Execution};

/// Integers strictly between `p (s - delta)` and `p (s + delta)`, with `s`
/// and `delta` over a common denominator.
struct Window<T> {
    s: T,
    delta: T,
    den: T,
}

impl<T: Integer + Clone + From<i64>> Window<T> {
    fn between(&self, p: i64) -> (i64, i64)
    where
        T: ToPrimitive,
    {
        let p = T::from(p);
        let lo = p.clone() * (self.s.clone() - self.delta.clone());
        let hi = p * (self.s.clone() + self.delta.clone());
        let first = lo.div_floor(&self.den) + T::one();
        let last = ceil_div(hi, &self.den) - T::one();
        (
            first.to_i64().expect("window inside i64"),
            last.to_i64().expect("window inside i64"),
        )
    }

    /// Largest integer strictly below `p (s + delta)`.
    fn below_upper(&self, p: i64) -> i64
    where
        T: ToPrimitive,
    {
        let hi = T::from(p) * (self.s.clone() + self.delta.clone());
        (ceil_div(hi, &self.den) - T::one()).to_i64().expect("window inside i64")
    }
}

fn ceil_div<T: Integer + Clone>(a: T, b: &T) -> T {
    let (q, r) = a.div_mod_floor(b);
    if r.is_zero() {
        q
    } else {
        q + T::one()
    }
}

enum AnyWindow {
    Small(Window<i128>),
    Big(Window<BigInt>),
}

impl AnyWindow {
    fn new(s: &Rational, delta: &Rational) -> Self {
        let den = s.denom().lcm(delta.denom());
        let sn = s.numer() * (&den / s.denom());
        let dn = delta.numer() * (&den / delta.denom());
        let fits = [&sn, &dn, &den].iter().all(|v| v.bits() < 90);
        if fits {
            AnyWindow::Small(Window {
                s: sn.to_i128().expect("fits"),
                delta: dn.to_i128().expect("fits"),
                den: den.to_i128().expect("fits"),
            })
        } else {
            AnyWindow::Big(Window { s: sn, delta: dn, den })
        }
    }

    fn between(&self, p: i64) -> (i64, i64) {
        match self {
            AnyWindow::Small(w) => w.between(p),
            AnyWindow::Big(w) => w.between(p),
        }
    }

    fn below_upper(&self, p: i64) -> i64 {
        match self {
            AnyWindow::Small(w) => w.below_upper(p),
            AnyWindow::Big(w) => w.below_upper(p),
        }
    }
}

/// `Psi(h_s O, delta)` for the cone `x > 0, |y| < delta x`.
///
/// Holonomies of `h_s O` are `(a, b - s a)` for holonomies `(a, b)` of `O`,
/// so candidates are directions `(p, q)` with `|q/p - s| < delta`, scanned by
/// increasing `p` from the least denominator in that interval.
pub fn psi_sheared(o: &Origami, s: &Rational, delta: &Rational) -> Result<i64> {
    let first = qmin(s, delta)?;
    let p0 = first.q.to_i64().ok_or_else(|| Error::NotFound { cap: "i64".into() })?;
    let window = AnyWindow::new(s, delta);
    let mut best = i64::MAX;
    let mut p = p0;
    while p < best {
        let (lo, hi) = window.between(p);
        for q in lo..=hi {
            if p.gcd(&q) == 1 {
                best = best.min(min_multiple(o, p, q)? * p);
            }
        }
        p += 1;
    }
    Ok(best)
}

/// `Psi(h_s O, delta)` for the cone `x > 0, y < delta x` without absolute
/// value. Requires `h_alpha` in the Veech group of `O`: the least multiple in
/// direction `(p, q)` is then periodic in `q` with period `alpha p`, so one
/// period below the cone's upper edge suffices.
pub fn psi_sheared_as_printed(o: &Origami, alpha: u64, s: &Rational, delta: &Rational) -> Result<i64> {
    let window = AnyWindow::new(s, delta);
    let mut best = i64::MAX;
    let mut p = 1;
    while p < best {
        let top = window.below_upper(p);
        let period = alpha as i64 * p;
        for q in top - period + 1..=top {
            if p.gcd(&q) == 1 {
                best = best.min(min_multiple(o, p, q)? * p);
            }
        }
        p += 1;
    }
    Ok(best)
}

#[derive(Debug, Clone)]
pub struct SurfaceExperiment {
    /// `sqrt(delta) Psi(h_s O, delta)` on the symmetric cone.
    pub lhs: Run,
    /// The same statistic at `delta / 16`.
    pub rhs_proxy: Run,
    /// `sqrt(delta) Psi(h_s O, delta)` on the cone without absolute value.
    pub as_printed: Run,
}

/// Midpoint grid `s_i = alpha (2i + 1) / (2n)` on `[0, alpha]`.
pub fn shear_grid_point(alpha: u64, i: u64, n: u64) -> Rational {
    ratio(alpha as i64 * (2 * i as i64 + 1), 2 * n as i64)
}

/// Grid point, then Ψ at delta, at delta/16 and in the as-printed cone.
type Row = (f64, i64, i64, i64);

pub fn sc_experiment(o: &Origami, alpha: u64, delta: f64, n: u64, exec: Execution) -> Result<SurfaceExperiment> {
    check_delta(delta)?;
    check_count(n)?;
    if alpha == 0 || !o.veech_h_alpha_check(alpha) {
        return Err(Error::InvalidArgument(format!(
            "h_{alpha} does not fix the surface up to relabelling"
        )));
    }
    let d = from_f64(delta)?;
    let d16 = from_f64(delta / 16.0)?;
    let rows = map_indices(exec, n, |i| {
        let s = shear_grid_point(alpha, i, n);
        let sf = crate::exact::to_f64(&s);
        Ok((
            sf,
            psi_sheared(o, &s, &d)?,
            psi_sheared(o, &s, &d16)?,
            psi_sheared_as_printed(o, alpha, &s, &d)?,
        ))
    })?;
    let scale = delta.sqrt();
    let run = |f: &dyn Fn(&Row) -> f64| {
        Run::new(
            rows.iter()
                .enumerate()
                .map(|(i, r)| Sample {
                    index: i as u64,
                    input: vec![r.0],
                    statistic: f(r),
                })
                .collect(),
        )
    };
    Ok(SurfaceExperiment {
        lhs: run(&|r| scale * r.1 as f64)?,
        rhs_proxy: run(&|r| scale / 4.0 * r.2 as f64)?,
        as_printed: run(&|r| scale * r.3 as f64)?,
    })
}
