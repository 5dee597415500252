//! Zero-tolerance cross-checks between independent computations of the same
//! minimum.

use num_traits::ToPrimitive;
use rand::Rng;

use crate::error::Result;
use crate::exact::{q_mn, qmin, qmin_bruteforce, ratio, to_f64, Rational, RationalMatrix};
use crate::lattice::{f_cone_exact, horocycle_2, horocycle_mn, ConeSpec, LatticeBasis, Matrix, Sidedness};
use crate::rng;

/// Shapes `(m, n)` checked against the linear-form shell scan.
pub const LINEAR_FORM_SHAPES: [(usize, usize); 3] = [(1, 1), (2, 1), (1, 2)];

const EXACT_CAP: i64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Tally {
    pub checked: u64,
    pub mismatches: u64,
}

impl Tally {
    fn record(&mut self, agree: bool) {
        self.checked += 1;
        if !agree {
            self.mismatches += 1;
        }
    }
}

/// One planar instance: `x`, `delta` and `q_min(x, delta)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarCase {
    pub x: f64,
    pub delta: f64,
    pub q: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    /// Continued fractions against the scan over `q`.
    pub bruteforce: Tally,
    /// `q_min(x, delta)` against the exact cone minimum of `h_x Z^2`.
    pub planar_bridge: Tally,
    /// `Q^{m,n}(X, delta)` against the exact cone minimum of `h_X Z^{m+n}`.
    pub linear_bridge: Vec<((usize, usize), Tally)>,
    pub cases: Vec<PlanarCase>,
}

impl OracleReport {
    pub fn mismatches(&self) -> u64 {
        self.bruteforce.mismatches
            + self.planar_bridge.mismatches
            + self.linear_bridge.iter().map(|(_, t)| t.mismatches).sum::<u64>()
    }
}

fn random_rational<R: Rng>(r: &mut R, den_max: i64) -> Rational {
    let d = r.random_range(1..=den_max);
    ratio(r.random_range(0..=d), d)
}

/// `delta` in `(0, 1/2]`.
fn random_delta<R: Rng>(r: &mut R, den_max: i64) -> Rational {
    let d = r.random_range(2..=den_max);
    ratio(r.random_range(1..=d / 2), d)
}

/// `n` planar instances and `max(n / 10, 1)` per linear-form shape, drawn
/// from stream `(seed, 0)`.
pub fn run_suite(n: u64, seed: u64) -> Result<OracleReport> {
    let mut r = rng::stream(seed, 0);
    let cap = ratio(EXACT_CAP, 1);
    let mut report = OracleReport {
        bruteforce: Tally::default(),
        planar_bridge: Tally::default(),
        linear_bridge: Vec::new(),
        cases: Vec::with_capacity(n as usize),
    };
    for _ in 0..n {
        let x = random_rational(&mut r, 1_000_000);
        let delta = random_delta(&mut r, 10_000);
        let fast = qmin(&x, &delta)?;
        report.bruteforce.record(fast == qmin_bruteforce(&x, &delta)?);
        let lattice = LatticeBasis::new(horocycle_2(x.clone()))?;
        let hit = f_cone_exact(&lattice, &ConeSpec::planar(delta.clone())?, &cap)?;
        report.planar_bridge.record(hit.unorm == Rational::from(fast.q.clone()));
        report.cases.push(PlanarCase {
            x: to_f64(&x),
            delta: to_f64(&delta),
            q: fast.q.to_u64().expect("q below the search cap"),
        });
    }
    for (m, k) in LINEAR_FORM_SHAPES {
        let mut tally = Tally::default();
        for _ in 0..(n / 10).max(1) {
            let entries: Vec<Rational> = (0..m * k).map(|_| random_rational(&mut r, 1000)).collect();
            let delta = ratio(r.random_range(1..=10), 40);
            let expected = q_mn(&RationalMatrix::new(m, k, entries.clone())?, &delta)?.qnorm;
            let rows = entries.chunks(k).map(|c| c.to_vec()).collect();
            let lattice = LatticeBasis::new(horocycle_mn(&Matrix::from_rows(rows)?))?;
            let cone = ConeSpec::new(k, m, delta, Sidedness::TwoSided)?;
            let hit = f_cone_exact(&lattice, &cone, &cap)?;
            tally.record(hit.unorm == ratio(expected as i64, 1));
        }
        report.linear_bridge.push(((m, k), tally));
    }
    Ok(report)
}
