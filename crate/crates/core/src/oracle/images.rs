use alloc::vec;
use alloc::vec::Vec;

use crate::cancel::Cancel;
use crate::ntkernel::is_prime_u64;

use super::two_adic;

/// Contraction of a would-be `(n,k,lambda)` difference set onto `Z_m`.
///
/// If `D` exists and `m | n`, the class counts `s_i = |{x in D : x = i mod m}|`
/// satisfy `0 <= s_i <= n/m`, `sum s_i = k`, `sum s_i^2 = k - lambda + lambda n/m`
/// and `sum_i s_i s_{i+j} = lambda n/m` for `j != 0 (mod m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageSet {
    pub m: usize,
    /// Every admissible vector, closed under rotation, sorted.
    pub vectors: Vec<Vec<u16>>,
}

/// Enumerates all admissible contraction vectors modulo `m`.
///
/// Returns `None` if cancelled.
pub fn quotient_images<C: Cancel + ?Sized>(
    n: usize,
    k: usize,
    lambda: usize,
    m: usize,
    cancel: &C,
) -> Option<ImageSet> {
    assert!(m >= 1 && n % m == 0);
    let q = n / m;
    let cross = lambda * q;
    let square = k + lambda * q - lambda;
    // x -> ax + b permutes admissible vectors; for prime m any two positions
    // can be sent to 0 and 1
    let affine = m >= 3 && is_prime_u64(m as u64);
    if affine && q <= 3 {
        if let Some(vectors) = two_adic::images(m, k, k - lambda, cross) {
            return Some(ImageSet { m, vectors });
        }
    }
    let mut e = Enum {
        m,
        cross,
        s: vec![0; m],
        partial: vec![0; m],
        reps: Vec::new(),
        ticks: 0,
        cancelled: false,
    };
    // s_0 is a largest entry; every vector has a rotation like that
    for top in (0..=q.min(k)).rev() {
        if top * top > square || top > k {
            continue;
        }
        if top * m < k {
            break;
        }
        e.s[0] = top;
        if affine && top > 0 {
            // exactly one largest entry
            e.rec(1, top - 1, k - top, square - top * top, cancel);
            // at least two, placed at 0 and 1
            if 2 * top <= k && 2 * top * top <= square && e.place(1, top) {
                e.rec(2, top, k - 2 * top, square - 2 * top * top, cancel);
                e.unplace(1, top, m - 1);
            }
            e.s[1] = 0;
        } else {
            e.rec(1, top, k - top, square - top * top, cancel);
        }
        if e.cancelled {
            return None;
        }
    }
    let mut vectors: Vec<Vec<u16>> = Vec::new();
    for r in &e.reps {
        let mults: Vec<usize> = if affine { (1..m).collect() } else { vec![1] };
        for &a in &mults {
            for b in 0..m {
                let mut v = vec![0u16; m];
                for (i, &x) in r.iter().enumerate() {
                    v[(a * i + b) % m] = x as u16;
                }
                vectors.push(v);
            }
        }
    }
    vectors.sort_unstable();
    vectors.dedup();
    Some(ImageSet { m, vectors })
}

struct Enum {
    m: usize,
    cross: usize,
    s: Vec<usize>,
    partial: Vec<usize>,
    reps: Vec<Vec<usize>>,
    ticks: u64,
    cancelled: bool,
}

impl Enum {
    /// Pairs `(t-j, t)` and `(t, t+j-m)` close once position `t` is set.
    fn closed(&self, t: usize, j: usize, v: usize) -> usize {
        let mut add = 0;
        if j <= t {
            add += self.s[t - j] * v;
        }
        if j >= self.m - t {
            add += v * self.s[t + j - self.m];
        }
        add
    }

    fn place(&mut self, t: usize, v: usize) -> bool {
        self.s[t] = v;
        for j in 1..self.m {
            self.partial[j] += self.closed(t, j, v);
            if self.partial[j] > self.cross {
                self.unplace(t, v, j);
                return false;
            }
        }
        true
    }

    fn unplace(&mut self, t: usize, v: usize, upto: usize) {
        for j in 1..=upto {
            self.partial[j] -= self.closed(t, j, v);
        }
        self.s[t] = 0;
    }

    /// Every shift can still reach `cross` with positions `t..m` holding
    /// values `<= cap` that sum to `rem`.
    fn reachable(&self, t: usize, cap: usize, rem: usize) -> bool {
        let m = self.m;
        (1..m).all(|j| {
            let mut w = 0;
            for u in t..m {
                let a = if u >= j { u - j } else { u + m - j };
                let b = if u + j < m { u + j } else { u + j - m };
                let known = if a < t { self.s[a] } else { 0 } + if b < t { self.s[b] } else { 0 };
                w = w.max(known);
            }
            self.partial[j] + rem * (w + cap) >= self.cross
        })
    }

    fn rec<C: Cancel + ?Sized>(&mut self, t: usize, cap: usize, rem: usize, sqrem: usize, cancel: &C) {
        self.ticks += 1;
        if self.ticks & 0xffff == 0 && cancel.cancelled() {
            self.cancelled = true;
        }
        if self.cancelled {
            return;
        }
        let m = self.m;
        if t == m {
            if rem == 0 && sqrem == 0 && (1..m).all(|j| self.partial[j] == self.cross) {
                self.reps.push(self.s.clone());
            }
            return;
        }
        let left = m - t;
        if rem > cap * left || sqrem * left < rem * rem || sqrem > cap * rem {
            return;
        }
        if !self.reachable(t, cap, rem) {
            return;
        }
        for v in 0..=cap.min(rem) {
            if v * v > sqrem {
                break;
            }
            if self.place(t, v) {
                self.rec(t + 1, cap, rem - v, sqrem - v * v, cancel);
                self.unplace(t, v, m - 1);
            }
            if self.cancelled {
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cancel::NeverCancel;

    fn brute(n: usize, k: usize, lambda: usize, m: usize) -> Vec<Vec<u16>> {
        let q = n / m;
        let mut out = Vec::new();
        let mut s = vec![0usize; m];
        loop {
            let sum: usize = s.iter().sum();
            if sum == k {
                let ok = (0..m).all(|j| {
                    let c: usize = (0..m).map(|i| s[i] * s[(i + j) % m]).sum();
                    c == if j == 0 { k + lambda * q - lambda } else { lambda * q }
                });
                if ok {
                    out.push(s.iter().map(|&x| x as u16).collect());
                }
            }
            let mut i = 0;
            while i < m && s[i] == q {
                s[i] = 0;
                i += 1;
            }
            if i == m {
                break;
            }
            s[i] += 1;
        }
        out.sort_unstable();
        out
    }

    #[test]
    fn matches_brute_force() {
        for &(n, k, l, m) in &[
            (15, 7, 3, 3),
            (15, 7, 3, 5),
            (21, 5, 1, 3),
            (21, 5, 1, 7),
            (16, 6, 2, 4),
            (16, 6, 2, 8),
            (25, 9, 3, 5),
            (40, 13, 4, 8),
            (40, 13, 4, 5),
            (35, 17, 8, 7),
            (36, 15, 6, 6),
        ] {
            let got = quotient_images(n, k, l, m, &NeverCancel).unwrap().vectors;
            assert_eq!(got, brute(n, k, l, m), "({n},{k},{l}) mod {m}");
        }
    }

    #[test]
    fn real_sets_have_images() {
        // (40,13,4) onto Z_8
        let d = [1u16, 2, 3, 5, 6, 9, 14, 15, 18, 20, 25, 27, 35];
        let mut s = vec![0u16; 8];
        for x in d {
            s[(x % 8) as usize] += 1;
        }
        let got = quotient_images(40, 13, 4, 8, &NeverCancel).unwrap().vectors;
        assert!(got.contains(&s));
    }

    #[test]
    fn mann_case_has_no_image() {
        // (25,9,3): 2 is semiprimitive mod 5 and v_2(6) = 1
        assert!(quotient_images(25, 9, 3, 5, &NeverCancel).unwrap().vectors.is_empty());
    }
}
