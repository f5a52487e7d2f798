use crate::error::{Error, Result};

/// The coefficient ring `Z/m` with the factorization of `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Modulus {
    m: u64,
    factors: Vec<(u64, u32)>,
}

/// Capped valuations `ν_i(a) = min(v_{p_i}(a), e_i)`, one per prime of `m`.
pub type Valuation = Vec<u32>;

fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

impl Modulus {
    pub fn new(m: u64) -> Result<Modulus> {
        if m < 2 || m > u32::MAX as u64 {
            return Err(Error::InvalidModulus(m));
        }
        Ok(Modulus { m, factors: factorize(m) })
    }

    pub fn value(&self) -> u64 {
        self.m
    }

    /// `[(p_i, e_i)]` with `m = ∏ p_i^e_i`, primes ascending.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Whether `m` is a prime power, so every ideal of `Z/m` is `⟨p^k⟩`.
    pub fn is_prime_power(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn reduce(&self, a: i128) -> u64 {
        a.rem_euclid(self.m as i128) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.m as u128) as u64
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a % self.m, self.m - b % self.m)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.m as u128) as u64
    }

    pub fn nu(&self, a: u64) -> Valuation {
        let a = a % self.m;
        self.factors
            .iter()
            .map(|&(p, e)| {
                if a == 0 {
                    return e;
                }
                let (mut a, mut k) = (a, 0);
                while a % p == 0 && k < e {
                    a /= p;
                    k += 1;
                }
                k
            })
            .collect()
    }

    fn value_of(&self, nu: &[u32]) -> u64 {
        self.factors.iter().zip(nu).map(|(&(p, _), &k)| p.pow(k)).product()
    }

    /// `∏ p_i^{ν_i(a)}` as an integer in `1..=m`.
    pub fn core(&self, a: u64) -> u64 {
        self.value_of(&self.nu(a))
    }

    pub fn is_unit(&self, a: u64) -> bool {
        self.nu(a).iter().all(|&k| k == 0)
    }

    /// Inverse of a unit.
    pub fn inverse(&self, u: u64) -> Option<u64> {
        let (g, x, _) = ext_gcd((u % self.m) as i128, self.m as i128);
        (g == 1).then(|| self.reduce(x))
    }

    /// `(u, core)` with `u` a unit and `u · core = a`.
    pub fn unit_normalize(&self, a: u64) -> (u64, u64) {
        let a = a % self.m;
        let core = self.core(a);
        if a == 0 {
            return (1, 0);
        }
        let k = a / core;
        let step = self.m / core;
        let mut u = k;
        while !self.is_unit(u) {
            u += step;
        }
        (u % self.m, core % self.m)
    }

    /// `a | b` in `Z/m`.
    pub fn divides(&self, a: u64, b: u64) -> bool {
        self.nu(a).iter().zip(self.nu(b)).all(|(x, y)| *x <= y)
    }

    pub fn gcd(&self, a: u64, b: u64) -> u64 {
        let nu: Vec<u32> = self.nu(a).iter().zip(self.nu(b)).map(|(x, y)| (*x).min(y)).collect();
        self.value_of(&nu) % self.m
    }

    pub fn lcm(&self, a: u64, b: u64) -> u64 {
        let nu: Vec<u32> = self.nu(a).iter().zip(self.nu(b)).map(|(x, y)| (*x).max(y)).collect();
        self.value_of(&nu) % self.m
    }

    /// `∏ p_i^{max(ν_i(a), ν_i(b))}` as an integer in `1..=m`.
    pub fn lcm_core(&self, a: u64, b: u64) -> u64 {
        let nu: Vec<u32> = self.nu(a).iter().zip(self.nu(b)).map(|(x, y)| (*x).max(y)).collect();
        self.value_of(&nu)
    }

    /// Generator of `{x | a x = 0}`: `∏ p_i^{e_i - ν_i(a)}`.
    pub fn ann_generator(&self, a: u64) -> u64 {
        let nu: Vec<u32> = self.nu(a).iter().zip(&self.factors).map(|(k, &(_, e))| e - k).collect();
        self.value_of(&nu) % self.m
    }

    /// Some `x` with `a x = b`, when `a | b`.
    pub fn quotient(&self, b: u64, a: u64) -> Option<u64> {
        if !self.divides(a, b) {
            return None;
        }
        let b = b % self.m;
        if b == 0 {
            return Some(0);
        }
        let (ua, _) = self.unit_normalize(a);
        let (ub, _) = self.unit_normalize(b);
        let ratio = self.core(b) / self.core(a);
        Some(self.mul(self.mul(ub, ratio % self.m), self.inverse(ua)?))
    }

    /// Coefficients `x_i` with `c = Σ x_i a_i`. A single divisor of `c` is
    /// used when one exists (the first in `coeffs`); otherwise a Bezout
    /// combination of all of them.
    pub fn solve_lead(&self, c: u64, coeffs: &[u64]) -> Option<Vec<u64>> {
        let mut x = vec![0; coeffs.len()];
        if let Some(j) = coeffs.iter().position(|&a| self.divides(a, c)) {
            x[j] = self.quotient(c, coeffs[j])?;
            return Some(x);
        }
        let mut g = self.m as i128;
        let mut comb = vec![0i128; coeffs.len()];
        for (i, &a) in coeffs.iter().enumerate() {
            let (d, s, t) = ext_gcd(g, (a % self.m) as i128);
            let m = self.m as i128;
            for v in comb.iter_mut() {
                *v = (*v * s.rem_euclid(m)).rem_euclid(m);
            }
            comb[i] = t.rem_euclid(self.m as i128);
            g = d;
        }
        let c = (c % self.m) as i128;
        if c % g != 0 {
            return None;
        }
        let k = c / g;
        for (xi, ci) in x.iter_mut().zip(comb) {
            *xi = self.reduce((ci % self.m as i128) * k);
        }
        Some(x)
    }
}
