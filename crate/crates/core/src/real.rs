//! Certified real arithmetic: intervals with directed-rounding
//! high-precision endpoints.
//!
//! The exact layer of this crate never touches floats; this module exists
//! for the handful of genuinely transcendental quantities (log-power weight
//! sequences, k-th roots in growth indices) and for inequality checks that
//! must hold with certainty rather than to within an epsilon. Lower
//! endpoints always round toward minus infinity and upper endpoints toward
//! plus infinity, so every arithmetic result encloses the true value.

use dashu_float::round::mode::{Down, Up};
use dashu_float::FBig;
use dashu_int::IBig;
use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::Zero;
use std::sync::OnceLock;

type FD = FBig<Down, 2>;
type FU = FBig<Up, 2>;

/// Global evaluation precision in mantissa bits, from
/// `CARLEMAN_PRECISION_BITS` (default 256, clamped to [64, 1048576]).
pub fn default_precision() -> usize {
    static PREC: OnceLock<usize> = OnceLock::new();
    *PREC.get_or_init(|| {
        std::env::var("CARLEMAN_PRECISION_BITS")
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
            .map(|p| p.clamp(64, 1 << 20))
            .unwrap_or(256)
    })
}

fn ibig(n: &BigInt) -> IBig {
    // IBig::from_le_bytes reads two's complement; the magnitude must go
    // through UBig or a set top bit flips the sign
    let (sign, bytes) = n.to_bytes_le();
    let mag = IBig::from(dashu_int::UBig::from_le_bytes(&bytes));
    if sign == Sign::Minus {
        -mag
    } else {
        mag
    }
}

fn up(x: &FD) -> FU {
    x.clone().with_rounding::<Up>()
}

fn down(x: &FU) -> FD {
    x.clone().with_rounding::<Down>()
}

/// A closed interval certainly containing one real number.
#[derive(Debug, Clone)]
pub struct RealInterval {
    lo: FD,
    hi: FU,
}

impl RealInterval {
    pub fn from_rational(x: &BigRational, prec: usize) -> Self {
        let n = ibig(x.numer());
        let d = ibig(x.denom());
        let lo = FD::from_parts(n.clone(), 0).with_precision(prec).value()
            / FD::from_parts(d.clone(), 0);
        let hi = FU::from_parts(n, 0).with_precision(prec).value() / FU::from_parts(d, 0);
        RealInterval { lo, hi }
    }

    pub fn from_bigint(n: &BigInt, prec: usize) -> Self {
        let v = ibig(n);
        RealInterval {
            lo: FD::from_parts(v.clone(), 0).with_precision(prec).value(),
            hi: FU::from_parts(v, 0).with_precision(prec).value(),
        }
    }

    pub fn from_u64(n: u64, prec: usize) -> Self {
        Self::from_bigint(&BigInt::from(n), prec)
    }

    /// Euler's number at the given precision.
    pub fn euler(prec: usize) -> Self {
        Self::from_u64(1, prec).exp()
    }

    pub fn add(&self, o: &Self) -> Self {
        RealInterval { lo: self.lo.clone() + &o.lo, hi: self.hi.clone() + &o.hi }
    }

    pub fn sub(&self, o: &Self) -> Self {
        RealInterval {
            lo: self.lo.clone() - down(&o.hi),
            hi: self.hi.clone() - up(&o.lo),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let cands_lo = [
            self.lo.clone() * &o.lo,
            self.lo.clone() * down(&o.hi),
            down(&self.hi) * &o.lo,
            down(&self.hi) * down(&o.hi),
        ];
        let cands_hi = [
            up(&self.lo) * up(&o.lo),
            up(&self.lo) * &o.hi,
            self.hi.clone() * up(&o.lo),
            self.hi.clone() * &o.hi,
        ];
        RealInterval {
            lo: cands_lo.into_iter().min().unwrap(),
            hi: cands_hi.into_iter().max().unwrap(),
        }
    }

    /// Division; the divisor interval must not contain zero.
    pub fn div(&self, o: &Self) -> Self {
        assert!(!o.contains_zero(), "interval division by an interval containing zero");
        let cands_lo = [
            self.lo.clone() / &o.lo,
            self.lo.clone() / down(&o.hi),
            down(&self.hi) / &o.lo,
            down(&self.hi) / down(&o.hi),
        ];
        let cands_hi = [
            up(&self.lo) / up(&o.lo),
            up(&self.lo) / &o.hi,
            self.hi.clone() / up(&o.lo),
            self.hi.clone() / &o.hi,
        ];
        RealInterval {
            lo: cands_lo.into_iter().min().unwrap(),
            hi: cands_hi.into_iter().max().unwrap(),
        }
    }

    pub fn powi(&self, e: u64) -> Self {
        let prec = self.lo.precision().max(64);
        let mut acc = RealInterval::from_u64(1, prec);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Natural logarithm; requires a certainly positive interval.
    pub fn ln(&self) -> Self {
        assert!(self.certainly_positive(), "ln of an interval not bounded away from zero");
        RealInterval { lo: self.lo.clone().ln(), hi: self.hi.clone().ln() }
    }

    pub fn exp(&self) -> Self {
        RealInterval { lo: self.lo.clone().exp(), hi: self.hi.clone().exp() }
    }

    /// `x^e` for rational `e`, via `exp(e ln x)`; requires `x > 0`.
    pub fn pow_rational(&self, e: &BigRational, prec: usize) -> Self {
        if e.is_zero() {
            return RealInterval::from_u64(1, prec);
        }
        let l = self.ln();
        let ei = RealInterval::from_rational(e, prec);
        l.mul(&ei).exp()
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= FD::ZERO && self.hi >= FU::ZERO
    }

    pub fn certainly_positive(&self) -> bool {
        self.lo > FD::ZERO
    }

    pub fn certainly_lt(&self, o: &Self) -> bool {
        down(&self.hi) < o.lo
    }

    pub fn certainly_le(&self, o: &Self) -> bool {
        down(&self.hi) <= o.lo
    }

    pub fn overlaps(&self, o: &Self) -> bool {
        !self.certainly_lt(o) && !o.certainly_lt(self)
    }

    /// Midpoint as f64, for display only.
    pub fn to_f64(&self) -> f64 {
        let a = self.lo.to_f64().value();
        let b = self.hi.to_f64().value();
        (a + b) / 2.0
    }

    pub fn lower_f64(&self) -> f64 {
        self.lo.to_f64().value()
    }

    pub fn upper_f64(&self) -> f64 {
        self.hi.to_f64().value()
    }
}
