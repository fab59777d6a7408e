//! Cheap-to-expensive evaluation of one matrix for the conjecture scan.
//!
//! Stages, in order: determinant; order `n-2` principal minors (stops at the
//! first nonzero one); order `n-1` principal minors; the remaining deleted
//! minors for equimodularity (stops at the first modulus mismatch).

use num_traits::ToPrimitive;

use crate::epr::{self, Letter, MinorScratch};
use crate::kernel;
use crate::matrix::IntMatrix;

/// Outcome of the fast pipeline.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Evaluation {
    pub nonsingular: bool,
    pub ends_naa: bool,
    pub equimodular: bool,
    /// All order `n-1` principal minors equal; meaningful only when nonsingular.
    pub constant_diagonal: bool,
}

impl Evaluation {
    /// The inverse is equimodular with constant diagonal.
    pub fn equimodular_constant_diagonal(&self) -> bool {
        self.equimodular && self.constant_diagonal
    }
}

/// Reusable buffers for evaluating many matrices of one order.
///
/// Entries are expected to be small (0-1 in the harness); minors are held in
/// `i64`, with an arbitrary-precision fallback that must land back in `i64`.
pub struct Evaluator {
    n: usize,
    minus_two: Vec<Vec<usize>>,
    sub: Vec<i64>,
    work: Vec<i64>,
    principal: Vec<i64>,
    scratch: MinorScratch,
}

impl Evaluator {
    pub fn new(n: usize) -> Self {
        let mut minus_two = Vec::new();
        if n >= 2 {
            kernel::for_each_subset(n, n - 2, |s| {
                minus_two.push(s.to_vec());
                true
            });
        }
        Self {
            n,
            minus_two,
            sub: Vec::with_capacity(n * n),
            work: Vec::with_capacity(n * n),
            principal: vec![0; n],
            scratch: MinorScratch::default(),
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    fn det_of_sub(&mut self, k: usize) -> i64 {
        self.work.clear();
        self.work.extend_from_slice(&self.sub[..k * k]);
        match kernel::bareiss_i64(&mut self.work, k) {
            Some(v) => v,
            None => kernel::det_exact(&self.sub, k, &mut self.work)
                .to_i64()
                .expect("minor of a small-entry matrix fits in i64"),
        }
    }

    fn gather(&mut self, a: &[i64], rows: impl Iterator<Item = usize> + Clone, cols: impl Iterator<Item = usize> + Clone) {
        let n = self.n;
        self.sub.clear();
        for r in rows {
            self.sub.extend(cols.clone().map(|c| a[r * n + c]));
        }
    }

    /// Deleted minor `det a({i},{j})`, 0-based.
    fn deleted(&mut self, a: &[i64], i: usize, j: usize) -> i64 {
        let n = self.n;
        self.gather(a, (0..n).filter(move |&r| r != i), (0..n).filter(move |&c| c != j));
        self.det_of_sub(n - 1)
    }

    pub fn det(&mut self, a: &[i64]) -> i64 {
        let n = self.n;
        self.sub.clear();
        self.sub.extend_from_slice(&a[..n * n]);
        self.det_of_sub(n)
    }

    /// Nonsingularity and equimodularity of the inverse for any square matrix
    /// (symmetric or not); `ends_naa` is left false.
    pub fn equimodular(&mut self, a: &[i64]) -> Evaluation {
        let mut e = Evaluation::default();
        if self.det(a) == 0 {
            return e;
        }
        e.nonsingular = true;
        self.fill_principal(a);
        self.finish_equimodular(a, &mut e);
        e
    }

    fn fill_principal(&mut self, a: &[i64]) {
        for i in 0..self.n {
            self.principal[i] = if self.n == 1 { 1 } else { self.deleted(a, i, i) };
        }
    }

    fn finish_equimodular(&mut self, a: &[i64], e: &mut Evaluation) {
        let n = self.n;
        let p0 = self.principal[0];
        e.constant_diagonal = self.principal.iter().all(|&d| d == p0);
        let modulus = p0.unsigned_abs();
        if modulus == 0 || self.principal.iter().any(|d| d.unsigned_abs() != modulus) {
            return;
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && self.deleted(a, i, j).unsigned_abs() != modulus {
                    return;
                }
            }
        }
        e.equimodular = true;
    }

    /// Full pipeline for a symmetric matrix of order at least 3.
    pub fn evaluate(&mut self, a: &[i64]) -> Evaluation {
        let n = self.n;
        let mut e = Evaluation::default();
        if self.det(a) == 0 {
            return e;
        }
        e.nonsingular = true;

        let mut minus_two_zero = true;
        for s in 0..self.minus_two.len() {
            let set = std::mem::take(&mut self.minus_two[s]);
            self.gather(a, set.iter().copied(), set.iter().copied());
            let d = self.det_of_sub(n - 2);
            self.minus_two[s] = set;
            if d != 0 {
                minus_two_zero = false;
                break;
            }
        }

        self.fill_principal(a);
        e.ends_naa = n >= 3 && minus_two_zero && self.principal.iter().all(|&d| d != 0);
        self.finish_equimodular(a, &mut e);
        e
    }

    /// Order `n-1` principal minors of the last nonsingular matrix evaluated.
    pub fn principal_minors(&self) -> &[i64] {
        &self.principal
    }

    /// Letters `n-4 ..= n` of a matrix already known to end with `NAA`.
    pub fn tail5(&mut self, a: &[i64]) -> [Letter; 5] {
        let n = self.n;
        let m = IntMatrix::new(n, a[..n * n].to_vec()).expect("square buffer");
        let l1 = epr::rational_letter(&m, n - 4, &mut self.scratch);
        let l2 = epr::rational_letter(&m, n - 3, &mut self.scratch);
        [l1, l2, Letter::N, Letter::A, Letter::A]
    }
}
