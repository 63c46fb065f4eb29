//! Seeded generators for property tests, the acceptance suite, and the CLI.
//!
//! Every generator is deterministic in the seed. Candidates are built with
//! margin and then re-checked exactly, so callers only ever see values that
//! satisfy the advertised predicate.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactnum::{QField, Rat};
use serde::Serialize;

use crate::error::Result;
use crate::region::{correct_side, hypersurface_point, phi, ExactPowerBase, HParams, RegionPoint};
use crate::seqcore::{is_r_factor_lc, Parity, Seq, SymSeq};
use crate::witness::{a_bound, c_bound, Scheme, WitnessSpec};

/// One CSV row of the planar boundary. The exact columns re-parse; the
/// `_approx` columns are for plotting.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryRow {
    pub x: Rat,
    pub d1: Rat,
    pub coord0: QField,
    pub coord1: QField,
    pub surface: usize,
    pub coord0_approx: f64,
    pub coord1_approx: f64,
}

pub struct Sampler {
    rng: ChaCha8Rng,
}

/// Smallest `k/den` that is at least `q`.
fn rational_above(q: &QField, den: i64) -> Rat {
    let mut k = (q.to_f64() * den as f64).ceil() as i64;
    loop {
        let cand = Rat::new(k, den).expect("nonzero denominator");
        if QField::rational(cand.clone()).cmp_mixed(q) != Ordering::Less {
            return cand;
        }
        k += 1;
    }
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Uniform on the grid `k/den` inside `[lo, hi]` with `den ≤ max_den`.
    pub fn rational_in(&mut self, lo: &Rat, hi: &Rat, max_den: i64) -> Rat {
        let den = self.rng.gen_range(1..=max_den.max(1));
        let den_r = Rat::from(den);
        let k_lo = (lo * &den_r).ceil();
        let k_hi = (hi * &den_r).floor();
        if k_hi < k_lo {
            return lo.clone();
        }
        let span = num_traits::ToPrimitive::to_i64(&(&k_hi - &k_lo)).unwrap_or(i64::MAX - 1);
        let k = k_lo + self.rng.gen_range(0..=span);
        Rat::new(k, den).expect("nonzero denominator")
    }

    /// Multiplicative slack `1 + e` with `e` roughly exponential, zero a
    /// quarter of the time so that tight cases show up.
    fn slack(&mut self) -> Rat {
        if self.rng.gen_ratio(1, 4) {
            return Rat::one();
        }
        let e: f64 = -(1.0 - self.rng.gen::<f64>()).ln() * 0.5;
        Rat::one() + Rat::new((e * 32.0).round() as i64, 32).expect("nonzero denominator")
    }

    /// A positive `r`-factor log-concave sequence of length `1..=max_len`.
    ///
    /// Log increments are drawn concave: each ratio `a_{k+1}/a_k` is the
    /// previous one divided by (an upper bound of) `r` times a slack factor.
    pub fn r_factor_lc_seq(&mut self, r: &QField, max_len: usize) -> Seq {
        let r_up = match r.as_rational() {
            Some(r) => r.clone(),
            None => rational_above(r, 64),
        };
        loop {
            let len = self.rng.gen_range(1..=max_len.max(1));
            let mut ratio = Rat::from(self.rng.gen_range(1..=8i64)) * r_up.pow((len / 2) as i64).expect("r ≥ 1");
            let mut a = self.rational_in(&Rat::new(1, 4).expect("const"), &Rat::from(6), 4);
            if a.is_zero() {
                continue;
            }
            let mut values = vec![QField::rational(a.clone())];
            for _ in 1..len {
                a = &a * &ratio;
                values.push(QField::rational(a.clone()));
                let step = &r_up * &self.slack();
                ratio = ratio.checked_div(&step).expect("positive step");
            }
            let s = Seq::new(values).expect("rational entries");
            if is_r_factor_lc(&s, r).is_ok_and(|c| c.holds()) {
                return s;
            }
        }
    }

    /// Random `r ∈ [1, 4]` together with a member of the region for `r`
    /// with `n ≤ n_max`.
    pub fn region_member(&mut self, n_max: usize) -> (Rat, RegionPoint) {
        loop {
            let r = self.rational_in(&Rat::one(), &Rat::from(4), 4);
            let n = self.rng.gen_range(0..=n_max);
            let parity = if self.rng.gen() { Parity::Even } else { Parity::Odd };
            if let Some(p) = self.region_point(&r, n, parity) {
                return (r, p);
            }
        }
    }

    /// A member of the region for the given `r`, `n` and parity, built from
    /// the centre outwards; `None` only if the exact re-check fails.
    pub fn region_point(&mut self, r: &Rat, n: usize, parity: Parity) -> Option<RegionPoint> {
        let phi = phi(r).ok()?;
        let c = phi.try_add(&QField::rational(r.clone())).ok()?;
        let c_up = rational_above(&c, 64);
        let last = match parity {
            Parity::Even => Rat::one() + r,
            Parity::Odd => rational_above(&phi, 64),
        };
        // u_j = x_j / x_{j−1}, with x_{−1} = 1
        let mut ratios = vec![&last * &self.slack()];
        for _ in 0..n {
            let next = ratios.last().expect("non-empty");
            let u = &(&c_up * next) * &self.slack();
            ratios.push(u);
        }
        ratios.reverse();
        let mut x = Rat::one();
        let core = ratios
            .iter()
            .map(|u| {
                x = &x * u;
                QField::rational(x.clone())
            })
            .collect();
        let p = SymSeq::new(core, parity).ok()?;
        correct_side(&p, r).ok()?.is_member().then_some(p)
    }

    /// A valid witness spec with `1 ≤ n ≤ n_max`: a random region member as
    /// the core, `C` inside the scheme's range and `a` just above its bound.
    pub fn witness_spec(&mut self, n_max: usize) -> WitnessSpec {
        loop {
            let r = self.rational_in(&Rat::one(), &Rat::from(4), 4);
            let n = self.rng.gen_range(1..=n_max.max(1));
            let parity = if self.rng.gen() { Parity::Even } else { Parity::Odd };
            let scheme = if self.rng.gen() { Scheme::Pentagonal } else { Scheme::Triangular };
            let Some(q) = self.region_point(&r, n, parity) else { continue };
            let bound = c_bound(&r).expect("r ≥ 1");
            let c = self.rational_in(&Rat::new(1, 8).expect("const"), &Rat::one(), 16);
            if !bound.admits_for(scheme, &c) {
                continue;
            }
            let a = a_bound(&r, &c, n, scheme, parity).expect("valid C").value
                + self.rational_in(&Rat::new(1, 8).expect("const"), &Rat::from(4), 8);
            return WitnessSpec { q_core: q.core().to_vec(), r, c, a, scheme, parity };
        }
    }

    /// Points on the two boundary curves of the planar (`n = 1`) region,
    /// `samples` per surface with `x ∈ [1, 10]`, sorted by `x`.
    pub fn planar_boundary(&mut self, r: &Rat, parity: Parity, samples: usize) -> Result<Vec<BoundaryRow>> {
        let mut rows = Vec::with_capacity(2 * samples);
        for surface in 0..=1 {
            let mut xs: Vec<Rat> = (0..samples).map(|_| self.rational_in(&Rat::one(), &Rat::from(10), 8)).collect();
            xs.sort();
            for x in xs {
                let params = HParams {
                    r: r.clone(),
                    n: 1,
                    parity,
                    surface,
                    x: ExactPowerBase::rational(x.clone())?,
                    gaps: Vec::new(),
                };
                let p = hypersurface_point(&params)?;
                let [c0, c1] = [&p.core()[0], &p.core()[1]];
                rows.push(BoundaryRow {
                    x,
                    // implied gap: d₁ = 1 on H₀, d₁ = 0 on H₁
                    d1: if surface == 0 { Rat::one() } else { Rat::zero() },
                    coord0: c0.clone(),
                    coord1: c1.clone(),
                    surface,
                    coord0_approx: c0.to_f64(),
                    coord1_approx: c1.to_f64(),
                });
            }
        }
        Ok(rows)
    }

    /// Random `r ∈ {1, 2, 3}` and a core `x_j = x^{1+d₁+…+d_j}` with
    /// `x = 4^60` and gaps strictly decreasing in `(0, 1)` on the grid `1/60`.
    /// Its materialization is `r`-factor log-concave.
    pub fn geometric_lc_point(&mut self, n_max: usize) -> (Rat, RegionPoint) {
        let r = Rat::from(self.rng.gen_range(1..=3i64));
        let n = self.rng.gen_range(1..=n_max.clamp(1, 58));
        let mut ks: Vec<i64> =
            rand::seq::index::sample(&mut self.rng, 59, n).into_iter().map(|k| k as i64 + 1).collect();
        ks.sort_unstable_by(|a, b| b.cmp(a));
        let base = Rat::from(4);
        let mut exponent = 60;
        let mut core = vec![QField::rational(base.pow(exponent).expect("positive"))];
        for k in ks {
            exponent += k;
            core.push(QField::rational(base.pow(exponent).expect("positive")));
        }
        let parity = if self.rng.gen() { Parity::Even } else { Parity::Odd };
        (r, SymSeq::new(core, parity).expect("positive core"))
    }
}
