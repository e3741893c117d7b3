//! Fixed-size complex matrix and vector kernels (2×2, 4×4, ℂ²/ℂ⁴).
//!
//! Everything here is closed form; there are no iterative solvers.

use num_complex::Complex64;

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// e^{iθ}
pub fn cis(theta: f64) -> C64 {
    C64::from_polar(1.0, theta)
}

// ---------------------------------------------------------------------------
// vectors
// ---------------------------------------------------------------------------

pub type Vec2C = [C64; 2];
pub type Vec4C = [C64; 4];

pub fn v2_norm(v: &Vec2C) -> f64 {
    (v[0].norm_sqr() + v[1].norm_sqr()).sqrt()
}

pub fn v4_norm_sqr(v: &Vec4C) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

pub fn v4_norm(v: &Vec4C) -> f64 {
    v4_norm_sqr(v).sqrt()
}

/// Standard Hermitian inner product ⟨v, w⟩ = Σ v̄_k w_k.
pub fn v4_inner(v: &Vec4C, w: &Vec4C) -> C64 {
    v.iter().zip(w).map(|(a, b)| a.conj() * b).sum()
}

pub fn v4_scale(v: &Vec4C, c: C64) -> Vec4C {
    [v[0] * c, v[1] * c, v[2] * c, v[3] * c]
}

pub fn v4_sub(v: &Vec4C, w: &Vec4C) -> Vec4C {
    [v[0] - w[0], v[1] - w[1], v[2] - w[2], v[3] - w[3]]
}

/// sin of the angle between the complex lines spanned by v and w, computed
/// as the relative norm of v's component orthogonal to w (stable near zero).
pub fn v4_line_distance(v: &Vec4C, w: &Vec4C) -> f64 {
    let nv = v4_norm(v);
    let nw = v4_norm(w);
    if nv == 0.0 || nw == 0.0 {
        return 1.0;
    }
    let coeff = v4_inner(w, v) / C64::new(nw * nw, 0.0);
    let mut sum = 0.0;
    for k in 0..4 {
        sum += (v[k] - coeff * w[k]).norm_sqr();
    }
    sum.sqrt() / nv
}

// ---------------------------------------------------------------------------
// 2×2
// ---------------------------------------------------------------------------

/// Row-major complex 2×2 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub m: [[C64; 2]; 2],
}

impl Mat2 {
    pub fn new(m: [[C64; 2]; 2]) -> Self {
        Mat2 { m }
    }

    pub fn identity() -> Self {
        Mat2::new([[ONE, ZERO], [ZERO, ONE]])
    }

    pub fn zero() -> Self {
        Mat2::new([[ZERO; 2]; 2])
    }

    pub fn diag(a: C64, b: C64) -> Self {
        Mat2::new([[a, ZERO], [ZERO, b]])
    }

    /// J₀ = [[0, −1], [1, 0]], the 2×2 quaternionic unit.
    pub fn j0() -> Self {
        Mat2::new([[ZERO, -ONE], [ONE, ZERO]])
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let mut r = [[ZERO; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                r[i][j] = self.m[i][0] * o.m[0][j] + self.m[i][1] * o.m[1][j];
            }
        }
        Mat2::new(r)
    }

    pub fn mul_vec(&self, v: &Vec2C) -> Vec2C {
        [
            self.m[0][0] * v[0] + self.m[0][1] * v[1],
            self.m[1][0] * v[0] + self.m[1][1] * v[1],
        ]
    }

    pub fn add(&self, o: &Mat2) -> Mat2 {
        let mut r = [[ZERO; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                r[i][j] = self.m[i][j] + o.m[i][j];
            }
        }
        Mat2::new(r)
    }

    pub fn sub(&self, o: &Mat2) -> Mat2 {
        let mut r = [[ZERO; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                r[i][j] = self.m[i][j] - o.m[i][j];
            }
        }
        Mat2::new(r)
    }

    pub fn scale(&self, c: C64) -> Mat2 {
        let mut r = self.m;
        for row in &mut r {
            for e in row {
                *e *= c;
            }
        }
        Mat2::new(r)
    }

    pub fn conj(&self) -> Mat2 {
        let mut r = self.m;
        for row in &mut r {
            for e in row {
                *e = e.conj();
            }
        }
        Mat2::new(r)
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2::new([[self.m[0][0], self.m[1][0]], [self.m[0][1], self.m[1][1]]])
    }

    /// Conjugate transpose A*.
    pub fn adjoint(&self) -> Mat2 {
        self.conj().transpose()
    }

    pub fn det(&self) -> C64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(&self) -> C64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn inverse(&self) -> Option<Mat2> {
        let d = self.det();
        if d.norm() == 0.0 {
            return None;
        }
        let inv = ONE / d;
        Some(Mat2::new([
            [self.m[1][1] * inv, -self.m[0][1] * inv],
            [-self.m[1][0] * inv, self.m[0][0] * inv],
        ]))
    }

    pub fn norm_fro(&self) -> f64 {
        self.m
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn norm_max(&self) -> f64 {
        self.m
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// ‖A*A − I‖_max, zero for unitary A.
    pub fn unitary_residual(&self) -> f64 {
        self.adjoint().mul(self).sub(&Mat2::identity()).norm_max()
    }

    pub fn is_unitary(&self, eq_abs: f64) -> bool {
        self.unitary_residual() < eq_abs
    }

    /// A nonzero vector in the kernel, assuming det ≈ 0. Picks the larger row.
    pub fn kernel_vector(&self) -> Vec2C {
        // For [[a, b], [c, d]] singular, (−b, a) and (−d, c) both work.
        let r0 = self.m[0][0].norm() + self.m[0][1].norm();
        let r1 = self.m[1][0].norm() + self.m[1][1].norm();
        if r0 >= r1 {
            [-self.m[0][1], self.m[0][0]]
        } else {
            [-self.m[1][1], self.m[1][0]]
        }
    }
}

// ---------------------------------------------------------------------------
// 4×4
// ---------------------------------------------------------------------------

/// Row-major complex 4×4 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat4 {
    pub m: [[C64; 4]; 4],
}

impl Mat4 {
    pub fn new(m: [[C64; 4]; 4]) -> Self {
        Mat4 { m }
    }

    pub fn identity() -> Self {
        let mut m = [[ZERO; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = ONE;
        }
        Mat4::new(m)
    }

    pub fn zero() -> Self {
        Mat4::new([[ZERO; 4]; 4])
    }

    pub fn diag(d: [C64; 4]) -> Self {
        let mut m = [[ZERO; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = d[i];
        }
        Mat4::new(m)
    }

    /// H = diag(1, 1, −1, −1), the signature-(2,2) Hermitian form.
    pub fn h_form() -> Self {
        Mat4::diag([ONE, ONE, -ONE, -ONE])
    }

    /// S = diag-block(J₀, J₀); J(z) = S z̄ is the quaternionic structure.
    pub fn s_form() -> Self {
        Mat4::from_blocks(&Mat2::j0(), &Mat2::zero(), &Mat2::zero(), &Mat2::j0())
    }

    /// Block matrix [[a, b], [c, d]] of 2×2 blocks.
    pub fn from_blocks(a: &Mat2, b: &Mat2, c: &Mat2, d: &Mat2) -> Self {
        let mut m = [[ZERO; 4]; 4];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = a.m[i][j];
                m[i][j + 2] = b.m[i][j];
                m[i + 2][j] = c.m[i][j];
                m[i + 2][j + 2] = d.m[i][j];
            }
        }
        Mat4::new(m)
    }

    pub fn block(&self, bi: usize, bj: usize) -> Mat2 {
        let mut m = [[ZERO; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = self.m[2 * bi + i][2 * bj + j];
            }
        }
        Mat2::new(m)
    }

    pub fn mul(&self, o: &Mat4) -> Mat4 {
        let mut r = [[ZERO; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let mut s = ZERO;
                for k in 0..4 {
                    s += self.m[i][k] * o.m[k][j];
                }
                r[i][j] = s;
            }
        }
        Mat4::new(r)
    }

    pub fn mul_vec(&self, v: &Vec4C) -> Vec4C {
        let mut r = [ZERO; 4];
        for i in 0..4 {
            for k in 0..4 {
                r[i] += self.m[i][k] * v[k];
            }
        }
        r
    }

    pub fn add(&self, o: &Mat4) -> Mat4 {
        let mut r = [[ZERO; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                r[i][j] = self.m[i][j] + o.m[i][j];
            }
        }
        Mat4::new(r)
    }

    pub fn sub(&self, o: &Mat4) -> Mat4 {
        let mut r = [[ZERO; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                r[i][j] = self.m[i][j] - o.m[i][j];
            }
        }
        Mat4::new(r)
    }

    pub fn scale(&self, c: C64) -> Mat4 {
        let mut r = self.m;
        for row in &mut r {
            for e in row {
                *e *= c;
            }
        }
        Mat4::new(r)
    }

    pub fn conj(&self) -> Mat4 {
        let mut r = self.m;
        for row in &mut r {
            for e in row {
                *e = e.conj();
            }
        }
        Mat4::new(r)
    }

    pub fn transpose(&self) -> Mat4 {
        let mut r = [[ZERO; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                r[i][j] = self.m[j][i];
            }
        }
        Mat4::new(r)
    }

    pub fn adjoint(&self) -> Mat4 {
        self.conj().transpose()
    }

    /// Cofactor expansion along the first row.
    pub fn det(&self) -> C64 {
        let minor = |r0: usize, r1: usize, r2: usize, c0: usize, c1: usize, c2: usize| -> C64 {
            let m = &self.m;
            m[r0][c0] * (m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1])
                - m[r0][c1] * (m[r1][c0] * m[r2][c2] - m[r1][c2] * m[r2][c0])
                + m[r0][c2] * (m[r1][c0] * m[r2][c1] - m[r1][c1] * m[r2][c0])
        };
        self.m[0][0] * minor(1, 2, 3, 1, 2, 3) - self.m[0][1] * minor(1, 2, 3, 0, 2, 3)
            + self.m[0][2] * minor(1, 2, 3, 0, 1, 3)
            - self.m[0][3] * minor(1, 2, 3, 0, 1, 2)
    }

    pub fn trace(&self) -> C64 {
        (0..4).map(|i| self.m[i][i]).sum()
    }

    /// Gauss-Jordan with partial pivoting; None when singular to working precision.
    pub fn inverse(&self) -> Option<Mat4> {
        let mut a = self.m;
        let mut inv = Mat4::identity().m;
        for col in 0..4 {
            let piv = (col..4)
                .max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))
                .unwrap();
            if a[piv][col].norm() < 1e-300 {
                return None;
            }
            a.swap(col, piv);
            inv.swap(col, piv);
            let d = ONE / a[col][col];
            for j in 0..4 {
                a[col][j] *= d;
                inv[col][j] *= d;
            }
            for i in 0..4 {
                if i != col {
                    let f = a[i][col];
                    for j in 0..4 {
                        let ac = a[col][j];
                        let ic = inv[col][j];
                        a[i][j] -= f * ac;
                        inv[i][j] -= f * ic;
                    }
                }
            }
        }
        Some(Mat4::new(inv))
    }

    pub fn norm_fro(&self) -> f64 {
        self.m
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn norm_max(&self) -> f64 {
        self.m
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Index of the entry with the largest magnitude.
    pub fn argmax_entry(&self) -> (usize, usize) {
        let mut best = (0, 0);
        let mut best_norm = -1.0;
        for i in 0..4 {
            for j in 0..4 {
                let n = self.m[i][j].norm();
                if n > best_norm {
                    best_norm = n;
                    best = (i, j);
                }
            }
        }
        best
    }

    pub fn symmetry_residual(&self) -> f64 {
        self.sub(&self.transpose()).norm_max()
    }
}
