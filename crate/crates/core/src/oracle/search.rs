use alloc::vec;
use alloc::vec::Vec;

use crate::cancel::Cancel;

use super::images::ImageSet;

/// Lifting constraint from one contraction `Z_n -> Z_m`.
struct Filter {
    m: usize,
    vectors: Vec<Vec<u16>>,
    cls: Vec<u16>,
    /// Stack of surviving vector indices, one segment per depth.
    alive: Vec<u32>,
    marks: Vec<usize>,
    avail: Vec<u16>,
}

impl Filter {
    fn new(img: ImageSet) -> Self {
        let m = img.m;
        let alive = (0..img.vectors.len() as u32).collect();
        Filter {
            m,
            vectors: img.vectors,
            cls: vec![0; m],
            alive,
            marks: vec![0],
            avail: vec![0; m],
        }
    }

    fn segment(&self) -> &[u32] {
        &self.alive[*self.marks.last().unwrap()..]
    }

    fn push(&mut self, x: usize) -> bool {
        let c = x % self.m;
        self.cls[c] += 1;
        let need = self.cls[c];
        let start = self.alive.len();
        let from = *self.marks.last().unwrap();
        for i in from..start {
            let v = self.alive[i];
            if self.vectors[v as usize][c] >= need {
                self.alive.push(v);
            }
        }
        self.marks.push(start);
        if self.alive.len() == start {
            self.pop(x);
            return false;
        }
        true
    }

    fn pop(&mut self, x: usize) {
        let start = self.marks.pop().unwrap();
        self.alive.truncate(start);
        self.cls[x % self.m] -= 1;
    }

    /// Some surviving vector can still be completed from the candidates.
    fn completable(&mut self, candidates: &[usize]) -> bool {
        self.avail.iter_mut().for_each(|a| *a = 0);
        for &z in candidates {
            self.avail[z % self.m] += 1;
        }
        let (cls, avail) = (&self.cls, &self.avail);
        self.segment().iter().any(|&v| {
            let v = &self.vectors[v as usize];
            (0..self.m).all(|c| v[c] - cls[c] <= avail[c])
        })
    }
}

/// Backtracking over sets `0 = d_0 < d_1 < ... < d_{k-1}` whose wrap-around gap
/// `n - d_{k-1}` is a largest gap.
pub(crate) struct Engine<'c, C: ?Sized> {
    n: usize,
    k: usize,
    lambda: u32,
    first_only: bool,
    elems: Vec<usize>,
    max_gap: Vec<usize>,
    cnt: Vec<u32>,
    blocked: Vec<u32>,
    is_sat: Vec<bool>,
    sat: Vec<usize>,
    sat_marks: Vec<usize>,
    filters: Vec<Filter>,
    pub found: Vec<Vec<usize>>,
    pub nodes: u64,
    pub cancelled: bool,
    cancel: &'c C,
}

impl<'c, C: Cancel + ?Sized> Engine<'c, C> {
    /// Needs `k >= 2`, hence `lambda >= 1`.
    pub(crate) fn new(
        n: usize,
        k: usize,
        lambda: usize,
        first_only: bool,
        images: Vec<ImageSet>,
        cancel: &'c C,
    ) -> Self {
        assert!(k >= 2 && lambda >= 1 && k <= n);
        Engine {
            n,
            k,
            lambda: lambda as u32,
            first_only,
            elems: Vec::with_capacity(k),
            max_gap: Vec::with_capacity(k),
            cnt: vec![0; n],
            blocked: vec![0; n],
            is_sat: vec![false; n],
            sat: Vec::new(),
            sat_marks: Vec::new(),
            filters: images.into_iter().map(Filter::new).collect(),
            found: Vec::new(),
            nodes: 0,
            cancelled: false,
            cancel,
        }
    }

    pub(crate) fn run(&mut self) {
        if self.push(0) {
            self.extend();
            self.pop();
        }
    }

    fn push(&mut self, x: usize) -> bool {
        let n = self.n;
        let mut over = false;
        for &y in &self.elems {
            let r = (x + n - y) % n;
            self.cnt[r] += 1;
            self.cnt[n - r] += 1;
            over |= self.cnt[r] > self.lambda || self.cnt[n - r] > self.lambda;
        }
        if !over {
            let mut fi = 0;
            while fi < self.filters.len() {
                if !self.filters[fi].push(x) {
                    for f in self.filters[..fi].iter_mut() {
                        f.pop(x);
                    }
                    over = true;
                    break;
                }
                fi += 1;
            }
        }
        if over {
            for &y in &self.elems {
                let r = (x + n - y) % n;
                self.cnt[r] -= 1;
                self.cnt[n - r] -= 1;
            }
            return false;
        }
        for &r in &self.sat {
            self.blocked[(x + r) % n] += 1;
        }
        let gap = match self.elems.last() {
            Some(&l) => (x - l).max(*self.max_gap.last().unwrap()),
            None => 0,
        };
        self.max_gap.push(gap);
        self.elems.push(x);
        self.sat_marks.push(self.sat.len());
        for i in 0..self.elems.len() - 1 {
            let y = self.elems[i];
            let r = (x + n - y) % n;
            for r in [r, n - r] {
                if self.cnt[r] == self.lambda && !self.is_sat[r] {
                    self.is_sat[r] = true;
                    self.sat.push(r);
                    for &z in &self.elems {
                        self.blocked[(z + r) % n] += 1;
                    }
                }
            }
        }
        true
    }

    fn pop(&mut self) {
        let n = self.n;
        let mark = self.sat_marks.pop().unwrap();
        while self.sat.len() > mark {
            let r = self.sat.pop().unwrap();
            self.is_sat[r] = false;
            for &z in &self.elems {
                self.blocked[(z + r) % n] -= 1;
            }
        }
        let x = self.elems.pop().unwrap();
        self.max_gap.pop();
        for &r in &self.sat {
            self.blocked[(x + r) % n] -= 1;
        }
        for f in self.filters.iter_mut() {
            f.pop(x);
        }
        for &y in &self.elems {
            let r = (x + n - y) % n;
            self.cnt[r] -= 1;
            self.cnt[n - r] -= 1;
        }
    }

    fn extend(&mut self) {
        self.nodes += 1;
        if self.nodes & 0xfff == 0 && self.cancel.cancelled() {
            self.cancelled = true;
        }
        if self.cancelled {
            return;
        }
        let rem = self.k - self.elems.len();
        if rem == 0 {
            self.found.push(self.elems.clone());
            return;
        }
        let last = *self.elems.last().unwrap();
        let g = *self.max_gap.last().unwrap();
        // every later element stays below n - (final largest gap) <= n - g
        let cands: Vec<usize> = (last + 1..=self.n - g.max(1)).filter(|&z| self.blocked[z] == 0).collect();
        if cands.len() < rem {
            return;
        }
        for f in self.filters.iter_mut() {
            if !f.completable(&cands) {
                return;
            }
        }
        for (i, &x) in cands.iter().enumerate() {
            if cands.len() - i < rem || x + rem - 1 + g.max(x - last) > self.n {
                break;
            }
            if self.blocked[x] != 0 {
                continue;
            }
            if self.push(x) {
                self.extend();
                self.pop();
            }
            if self.cancelled || (self.first_only && !self.found.is_empty()) {
                return;
            }
        }
    }
}
