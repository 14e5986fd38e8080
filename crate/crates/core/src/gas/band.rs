//! Banded symmetric LDL^T factorization with Takahashi selected inversion.
//!
//! The GMRF precision matrix over row-major free-cell indices is banded
//! (bandwidth <= lattice width), so factorization and the in-band entries of
//! the inverse both cost O(n * b^2). Columns are stored contiguously and the
//! Takahashi recursion runs over a circular dense window of the trailing
//! b+1 columns, keeping the hot loops in cache. The recursion yields exact
//! marginal variances (the diagonal of the inverse) without forming the
//! dense inverse.

/// Symmetric banded matrix, lower storage by column:
/// entry `(j + off, j)` for `off in 0..=b` lives at `data[j * (b + 1) + off]`.
#[derive(Debug, Clone)]
pub struct BandMatrix {
    n: usize,
    b: usize,
    data: Vec<f64>,
}

impl BandMatrix {
    pub fn zeros(n: usize, b: usize) -> Self {
        BandMatrix { n, b, data: vec![0.0; n * (b + 1)] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        let (hi, lo) = if i >= j { (i, j) } else { (j, i) };
        debug_assert!(hi - lo <= self.b);
        self.data[lo * (self.b + 1) + (hi - lo)] += v;
    }

    #[cfg(test)]
    fn get(&self, i: usize, j: usize) -> f64 {
        let (hi, lo) = if i >= j { (i, j) } else { (j, i) };
        if hi - lo > self.b {
            return 0.0;
        }
        self.data[lo * (self.b + 1) + (hi - lo)]
    }

    /// y = A x.
    pub fn mul_vec(&self, x: &[f64], y: &mut [f64]) {
        let (n, b) = (self.n, self.b);
        y.iter_mut().for_each(|v| *v = 0.0);
        for j in 0..n {
            let col = &self.data[j * (b + 1)..j * (b + 1) + b.min(n - 1 - j) + 1];
            let xj = x[j];
            y[j] += col[0] * xj;
            for (off, &a) in col.iter().enumerate().skip(1) {
                y[j + off] += a * xj;
                y[j] += a * x[j + off];
            }
        }
    }
}

/// Unit-lower LDL^T factor, columns contiguous:
/// `lcol[j * b + (off - 1)]` holds `L(j + off, j)` for `off in 1..=b`.
pub struct BandLdl {
    n: usize,
    b: usize,
    lcol: Vec<f64>,
    d: Vec<f64>,
}

/// Right-looking banded LDL^T. Returns `None` if a pivot collapses
/// (matrix not positive definite to working precision).
pub fn factor(a: &BandMatrix) -> Option<BandLdl> {
    let (n, b) = (a.n, a.b);
    let m = b + 1;
    let mut w = a.data.clone();
    let mut lcol = vec![0.0f64; n * b.max(1)];
    let mut d = vec![0.0f64; n];
    for j in 0..n {
        let base = j * m;
        let piv = w[base];
        if !(piv > 0.0) || !piv.is_finite() {
            return None;
        }
        d[j] = piv;
        let bj = b.min(n - 1 - j);
        for off in 1..=bj {
            lcol[j * b + off - 1] = w[base + off] / piv;
        }
        // Trailing update: A(j+r, j+c) -= L(j+r,j) * d * L(j+c,j).
        for c in 1..=bj {
            let lc_d = lcol[j * b + c - 1] * piv;
            if lc_d == 0.0 {
                continue;
            }
            let tbase = (j + c) * m - c;
            for r in c..=bj {
                w[tbase + r] -= lcol[j * b + r - 1] * lc_d;
            }
        }
    }
    Some(BandLdl { n, b, lcol, d })
}

impl BandLdl {
    /// Solve A x = rhs via forward/diagonal/backward substitution.
    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let (n, b) = (self.n, self.b);
        let mut x = rhs.to_vec();
        for j in 0..n {
            let bj = b.min(n - 1 - j);
            let xj = x[j];
            if xj != 0.0 {
                for off in 1..=bj {
                    x[j + off] -= self.lcol[j * b + off - 1] * xj;
                }
            }
        }
        for j in 0..n {
            x[j] /= self.d[j];
        }
        for j in (0..n).rev() {
            let bj = b.min(n - 1 - j);
            let mut s = x[j];
            for off in 1..=bj {
                s -= self.lcol[j * b + off - 1] * x[j + off];
            }
            x[j] = s;
        }
        x
    }

    /// Diagonal of A^{-1} by the Takahashi recursion over the band, using a
    /// circular (b+1)x(b+1) window of the trailing covariance block.
    pub fn inverse_diag(&self) -> Vec<f64> {
        let (n, b) = (self.n, self.b);
        if n == 0 {
            return Vec::new();
        }
        let m = b + 1;
        let mut window = vec![0.0f64; m * m];
        let mut phys = vec![0usize; m];
        let mut out = vec![0.0f64; n];
        for j in (0..n).rev() {
            for (a, p) in phys.iter_mut().enumerate() {
                *p = (j + a) % m;
            }
            let bj = b.min(n - 1 - j);
            let col = &self.lcol[j * b..j * b + bj];
            let row0 = phys[0] * m;
            for i_r in (0..=bj).rev() {
                let mut v = if i_r == 0 { 1.0 / self.d[j] } else { 0.0 };
                let row_i = phys[i_r] * m;
                // k_r <= i_r: sigma(j+i_r, j+k_r) sits in row i_r.
                for k_r in 1..=i_r.min(bj) {
                    v -= col[k_r - 1] * window[row_i + phys[k_r]];
                }
                // k_r > i_r: sigma(j+k_r, j+i_r) sits in column i_r.
                for k_r in (i_r + 1)..=bj {
                    v -= col[k_r - 1] * window[phys[k_r] * m + phys[i_r]];
                }
                window[row_i + phys[0]] = v;
                window[row0 + phys[i_r]] = v;
            }
            out[j] = window[row0 + phys[0]];
        }
        out
    }
}
