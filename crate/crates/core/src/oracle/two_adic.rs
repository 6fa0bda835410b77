//! Contraction vectors with entries in `{0,1,2,3}` modulo a prime `m` for
//! which 2 is a primitive root.
//!
//! Write `s = sigma + 2 tau` with 0/1 vectors. In `R = GF(2)[x]/(x^m - 1)`,
//! `R = GF(2) + GF(2^(m-1))`, the target `S S* = a + bJ` with `a` odd and `b`
//! even forces `sigma sigma* = 1`: `sigma` lies in the cyclic group of order
//! `2^h + 1`, `h = (m-1)/2`. Modulo 4 the same identity is linear in `tau`.

use alloc::vec;
use alloc::vec::Vec;

/// `None` when the method does not apply; otherwise every `s` in
/// `{0..3}^m` with `sum s = k` and `sum_i s_i s_{i+j} = a + b [j = 0]`.
pub(crate) fn images(m: usize, k: usize, a: usize, b: usize) -> Option<Vec<Vec<u16>>> {
    if !(5..=63).contains(&m) || a % 2 == 0 || b % 2 == 1 || !two_is_primitive(m) {
        return None;
    }
    let ring = Ring::new(m);
    let h = (m - 1) / 2;
    let order = (1u64 << h) + 1;
    let primes = prime_factors(order);
    let rest = order / m as u64;
    if rest % m as u64 == 0 {
        return None;
    }
    let g = (1u64..)
        .map(|y| (y << 1) | 1)
        .filter(|y| y.count_ones() % 2 == 1 && *y != ring.mask)
        .map(|y| ring.pow(y, (1u64 << h) - 1))
        .find(|&g| primes.iter().all(|p| ring.pow(g, order / p) != 1))?;
    // complement of the translations <x>
    let c = ring.pow(g, m as u64);
    let mut reps = Vec::new();
    let mut eta = 1u64;
    for _ in 0..rest {
        if (2..m).all(|u| eta <= ring.scale(eta, u)) {
            solve_tau(&ring, eta, k, a, b, &mut reps);
        }
        eta = ring.mul(eta, c);
    }
    let mut out = Vec::new();
    for s in &reps {
        for u in 1..m {
            for t in 0..m {
                let mut v = vec![0u16; m];
                for (i, &x) in s.iter().enumerate() {
                    v[(u * i + t) % m] = x;
                }
                out.push(v);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    Some(out)
}

fn two_is_primitive(m: usize) -> bool {
    let mut x = 1usize;
    for e in 1..m {
        x = x * 2 % m;
        if x == 1 {
            return e == m - 1;
        }
    }
    false
}

fn prime_factors(mut v: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= v {
        if v % p == 0 {
            out.push(p);
            while v % p == 0 {
                v /= p;
            }
        }
        p += 1;
    }
    if v > 1 {
        out.push(v);
    }
    out
}

/// `GF(2)[x]/(x^m - 1)` on `m`-bit masks.
struct Ring {
    m: usize,
    mask: u64,
}

impl Ring {
    fn new(m: usize) -> Self {
        Ring {
            m,
            mask: (1u64 << m) - 1,
        }
    }

    fn rot(&self, v: u64, i: usize) -> u64 {
        let i = i % self.m;
        if i == 0 {
            v
        } else {
            ((v << i) | (v >> (self.m - i))) & self.mask
        }
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        let mut r = 0;
        let mut a = a;
        while a != 0 {
            let i = a.trailing_zeros() as usize;
            r ^= self.rot(b, i);
            a &= a - 1;
        }
        r
    }

    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Image under `x -> x^u`.
    fn scale(&self, v: u64, u: usize) -> u64 {
        let mut r = 0;
        for i in 0..self.m {
            if v >> i & 1 == 1 {
                r |= 1 << (i * u % self.m);
            }
        }
        r
    }
}

fn solve_tau(ring: &Ring, sigma: u64, k: usize, a: usize, b: usize, reps: &mut Vec<Vec<u16>>) {
    let m = ring.m;
    let w = sigma.count_ones() as usize;
    // counts of 1, 2, 3 entries are forced by w, k and a + b
    if k < w || (k - w) % 2 == 1 || a + b < w || (a + b - w) % 4 != 0 {
        return;
    }
    let tw = (k - w) / 2;
    let Some(c3) = ((a + b - w) / 4).checked_sub(tw) else {
        return;
    };
    let bits: Vec<usize> = (0..m).filter(|&i| sigma >> i & 1 == 1).collect();
    let mut diff = vec![0usize; m];
    for &u in &bits {
        for &v in &bits {
            diff[(u + m - v) % m] += 1;
        }
    }
    // row j: coefficient j of sigma tau* + tau sigma*, mod 2
    let mut rows: Vec<(u64, bool)> = Vec::with_capacity(m);
    for j in 0..m {
        let target = if j == 0 { a + b } else { b };
        let rhs = ((target as isize - diff[j] as isize) / 2).rem_euclid(2) == 1;
        rows.push((ring.rot(sigma, m - j) ^ ring.rot(sigma, j), rhs));
    }
    let mut pivots: Vec<(usize, u64, bool)> = Vec::new();
    for (mut r, mut rhs) in rows {
        for &(col, pr, prhs) in &pivots {
            if r >> col & 1 == 1 {
                r ^= pr;
                rhs ^= prhs;
            }
        }
        if r == 0 {
            if rhs {
                return;
            }
            continue;
        }
        let col = r.trailing_zeros() as usize;
        for p in pivots.iter_mut() {
            if p.1 >> col & 1 == 1 {
                p.1 ^= r;
                p.2 ^= rhs;
            }
        }
        pivots.push((col, r, rhs));
    }
    let pivot_mask: u64 = pivots.iter().map(|p| 1u64 << p.0).sum();
    let mut tau: u64 = pivots.iter().filter(|p| p.2).map(|p| 1u64 << p.0).sum();
    // one null vector per free column
    let basis: Vec<u64> = (0..m)
        .filter(|&f| pivot_mask >> f & 1 == 0)
        .map(|f| {
            let mut v = 1u64 << f;
            for &(col, r, _) in &pivots {
                if r >> f & 1 == 1 {
                    v |= 1 << col;
                }
            }
            v
        })
        .collect();
    let mut s = vec![0u16; m];
    for step in 0u64..(1u64 << basis.len()) {
        if step > 0 {
            tau ^= basis[step.trailing_zeros() as usize];
        }
        if tau.count_ones() as usize != tw || (tau & sigma).count_ones() as usize != c3 {
            continue;
        }
        for (i, x) in s.iter_mut().enumerate() {
            *x = (sigma >> i & 1) as u16 + 2 * (tau >> i & 1) as u16;
        }
        let ok = (1..m).all(|j| (0..m).map(|i| (s[i] * s[(i + j) % m]) as usize).sum::<usize>() == b);
        if ok {
            reps.push(s.clone());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(m: usize, k: usize, a: usize, b: usize) -> Vec<Vec<u16>> {
        let mut out = Vec::new();
        for code in 0u64..(1u64 << (2 * m)) {
            let s: Vec<u16> = (0..m).map(|i| (code >> (2 * i) & 3) as u16).collect();
            if s.iter().map(|&x| x as usize).sum::<usize>() != k {
                continue;
            }
            let ok = (0..m).all(|j| {
                let c: usize = (0..m).map(|i| (s[i] * s[(i + j) % m]) as usize).sum();
                c == if j == 0 { a + b } else { b }
            });
            if ok {
                out.push(s);
            }
        }
        out.sort_unstable();
        out
    }

    #[test]
    fn agrees_with_brute_force() {
        let mut nonempty = 0;
        for m in [5usize, 11] {
            for k in (1..=3 * m).step_by(2) {
                for b in (0..=k * k / m).step_by(2) {
                    let Some(a) = (k * k).checked_sub(b * m) else { continue };
                    if a % 2 == 0 || a + b > 9 * m {
                        continue;
                    }
                    if m == 11 && !cfg!(not(debug_assertions)) && k > 9 {
                        continue;
                    }
                    let got = images(m, k, a, b).expect("method applies");
                    assert_eq!(got, brute(m, k, a, b), "m={m} k={k} a={a} b={b}");
                    nonempty += usize::from(!got.is_empty());
                }
            }
        }
        assert!(nonempty > 3);
    }

    #[test]
    fn not_applicable() {
        assert!(images(7, 5, 3, 2).is_none()); // 2 has order 3 mod 7
        assert!(images(5, 4, 6, 2).is_none()); // a even
    }
}
