use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::arith::{gcd_u64, isqrt, mul_mod_u64};
use super::primality::{primality, Primality};
use super::Budget;

/// Prime-power decomposition of a positive integer.
///
/// When `complete` is false the listed prime powers divide `value` and the
/// remaining cofactor (> 1) could not be split within budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub value: BigUint,
    /// Strictly increasing primes with positive exponents.
    pub factors: Vec<(BigUint, u32)>,
    pub complete: bool,
    /// Some listed prime only passed the probabilistic rounds.
    pub probable: bool,
}

impl Factorization {
    /// `value` divided by the listed prime powers; 1 when complete.
    pub fn cofactor(&self) -> BigUint {
        let mut c = self.value.clone();
        for (p, k) in &self.factors {
            for _ in 0..*k {
                c /= p;
            }
        }
        c
    }

    pub fn exponent_of(&self, p: &BigUint) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, k)| *k)
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn product(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (p, k)| acc * p.pow(*k))
    }
}

/// Trial division up to `budget.trial_bound`, then Brent's rho on whatever
/// composite cofactor survives. Deterministic for a fixed seed.
pub fn factorize(m: &BigUint, budget: &Budget) -> Factorization {
    let mut out = Factorization {
        value: m.clone(),
        factors: Vec::new(),
        complete: !m.is_zero(),
        probable: false,
    };
    if m <= &BigUint::one() {
        return out;
    }
    let mut found: Vec<(BigUint, u32)> = Vec::new();
    let rem = trial_divide(m, budget.trial_bound, &mut found);
    if !rem.is_one() {
        let bound = BigUint::from(budget.trial_bound);
        if rem <= &bound * &bound {
            // no factor <= sqrt(rem) survived trial division
            found.push((rem, 1));
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
            let mut iters = budget.rho_iterations;
            let mut stack = vec![rem];
            while let Some(c) = stack.pop() {
                match primality(&c, budget.seed) {
                    Primality::Prime => found.push((c, 1)),
                    Primality::ProbablePrime => {
                        out.probable = true;
                        found.push((c, 1));
                    }
                    Primality::Composite => {
                        let r = isqrt(&c);
                        if &r * &r == c {
                            stack.push(r.clone());
                            stack.push(r);
                            continue;
                        }
                        match rho(&c, &mut iters, &mut rng) {
                            Some(f) => {
                                let g = &c / &f;
                                stack.push(f);
                                stack.push(g);
                            }
                            None => out.complete = false,
                        }
                    }
                }
            }
        }
    }
    found.sort();
    for (p, k) in found {
        match out.factors.last_mut() {
            Some((q, e)) if *q == p => *e += k,
            _ => out.factors.push((p, k)),
        }
    }
    out
}

fn trial_divide(m: &BigUint, bound: u64, found: &mut Vec<(BigUint, u32)>) -> BigUint {
    if let Some(v) = m.to_u64() {
        let mut v = v;
        let mut d = 2u64;
        let mut step = 1u64;
        while d <= bound && d.saturating_mul(d) <= v {
            if v % d == 0 {
                let mut k = 0;
                while v % d == 0 {
                    v /= d;
                    k += 1;
                }
                found.push((BigUint::from(d), k));
            }
            d += step;
            if d == 3 {
                step = 2;
            }
        }
        return BigUint::from(v);
    }
    let mut rem = m.clone();
    let mut d = 2u64;
    let mut step = 1u64;
    while d <= bound {
        if let Some(v) = rem.to_u64() {
            let mut rest = trial_divide_from(v, d, step, bound, found);
            return core::mem::take(&mut rest);
        }
        if (&rem % d).is_zero() {
            let mut k = 0;
            while (&rem % d).is_zero() {
                rem /= d;
                k += 1;
            }
            found.push((BigUint::from(d), k));
        }
        d += step;
        if d == 3 {
            step = 2;
        }
    }
    rem
}

fn trial_divide_from(
    mut v: u64,
    mut d: u64,
    mut step: u64,
    bound: u64,
    found: &mut Vec<(BigUint, u32)>,
) -> BigUint {
    while d <= bound && d.saturating_mul(d) <= v {
        if v % d == 0 {
            let mut k = 0;
            while v % d == 0 {
                v /= d;
                k += 1;
            }
            found.push((BigUint::from(d), k));
        }
        d += step;
        if d == 3 {
            step = 2;
        }
    }
    BigUint::from(v)
}

/// Brent's variant of Pollard rho. Returns a nontrivial factor or `None`
/// once the shared iteration budget runs out.
fn rho(n: &BigUint, iters: &mut u64, rng: &mut ChaCha8Rng) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    if let Some(v) = n.to_u64() {
        return rho_u64(v, iters, rng).map(BigUint::from);
    }
    while *iters > 0 {
        let c = BigUint::from(rng.next_u64()) % n;
        let y0 = BigUint::from(rng.next_u64()) % n;
        if let Some(f) = brent_big(n, &c, y0, iters) {
            return Some(f);
        }
    }
    None
}

fn brent_big(n: &BigUint, c: &BigUint, mut y: BigUint, iters: &mut u64) -> Option<BigUint> {
    const BATCH: u64 = 128;
    let f = |x: &BigUint| (x * x + c) % n;
    let mut r = 1u64;
    let mut q = BigUint::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut g = BigUint::one();
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            let m = BATCH.min(r - k);
            for _ in 0..m {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += m;
            *iters = iters.saturating_sub(m);
            if *iters == 0 && g.is_one() {
                return None;
            }
        }
        r *= 2;
    }
    if g == *n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    if g == *n {
        None
    } else {
        Some(g)
    }
}

fn rho_u64(n: u64, iters: &mut u64, rng: &mut ChaCha8Rng) -> Option<u64> {
    const BATCH: u64 = 128;
    while *iters > 0 {
        let c = rng.next_u64() % n;
        let f = |x: u64| ((x as u128 * x as u128 + c as u128) % n as u128) as u64;
        let mut y = rng.next_u64() % n;
        let mut x = y;
        let mut ys = y;
        let mut q = 1u64;
        let mut g = 1u64;
        let mut r = 1u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                let m = BATCH.min(r - k);
                for _ in 0..m {
                    y = f(y);
                    q = mul_mod_u64(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += m;
                *iters = iters.saturating_sub(m);
                if *iters == 0 && g == 1 {
                    return None;
                }
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g != 1 {
                    break;
                }
            }
        }
        if g != n {
            return Some(g);
        }
    }
    None
}

/// All positive divisors, ascending. Requires a complete factorization.
pub fn divisors(f: &Factorization) -> Vec<BigUint> {
    let mut ds = vec![BigUint::one()];
    for (p, k) in &f.factors {
        let len = ds.len();
        let mut pk = BigUint::one();
        for _ in 0..*k {
            pk *= p;
            for i in 0..len {
                ds.push(&ds[i] * &pk);
            }
        }
    }
    ds.sort();
    ds
}
