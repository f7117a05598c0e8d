//! Dense 3x3 complex linear algebra: pivoted LU, a condition estimate, and
//! two independent routes to the matrix exponential.

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;

pub type CMat3 = Matrix3<Complex64>;
pub type CVec3 = Vector3<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Induced 1-norm (max column sum of moduli).
pub fn norm1(m: &CMat3) -> f64 {
    (0..3)
        .map(|j| (0..3).map(|i| m[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// LU factorization `P M = L U` with partial pivoting.
#[derive(Debug, Clone)]
pub struct Lu3 {
    lu: CMat3,
    perm: [usize; 3],
}

impl Lu3 {
    /// `None` if a pivot is exactly zero.
    pub fn new(m: &CMat3) -> Option<Self> {
        let mut lu = *m;
        let mut perm = [0, 1, 2];
        for k in 0..3 {
            let p = (k..3)
                .max_by(|&i, &j| lu[(i, k)].norm().total_cmp(&lu[(j, k)].norm()))
                .unwrap();
            if lu[(p, k)] == ZERO {
                return None;
            }
            if p != k {
                lu.swap_rows(p, k);
                perm.swap(p, k);
            }
            let pivot = lu[(k, k)];
            for i in k + 1..3 {
                let f = lu[(i, k)] / pivot;
                lu[(i, k)] = f;
                for j in k + 1..3 {
                    let u = lu[(k, j)];
                    lu[(i, j)] -= f * u;
                }
            }
        }
        Some(Self { lu, perm })
    }

    pub fn solve(&self, b: &CVec3) -> CVec3 {
        let mut x = CVec3::from_fn(|i, _| b[self.perm[i]]);
        for i in 1..3 {
            for j in 0..i {
                let l = self.lu[(i, j)];
                let xj = x[j];
                x[i] -= l * xj;
            }
        }
        for i in (0..3).rev() {
            for j in i + 1..3 {
                let u = self.lu[(i, j)];
                let xj = x[j];
                x[i] -= u * xj;
            }
            x[i] /= self.lu[(i, i)];
        }
        x
    }

    pub fn inverse(&self) -> CMat3 {
        let mut inv = CMat3::zeros();
        for j in 0..3 {
            let col = self.solve(&CVec3::from_fn(|i, _| if i == j { ONE } else { ZERO }));
            inv.set_column(j, &col);
        }
        inv
    }
}

/// 1-norm condition number `||M|| ||M^-1||`; infinite when singular.
pub fn cond1(m: &CMat3) -> f64 {
    match Lu3::new(m) {
        Some(lu) => norm1(m) * norm1(&lu.inverse()),
        None => f64::INFINITY,
    }
}

/// Roots of the characteristic polynomial of `m`, by Durand–Kerner
/// iteration followed by Newton polishing.
pub fn eigenvalues(m: &CMat3) -> [Complex64; 3] {
    let tr = m.trace();
    let minors = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)] + m[(0, 0)] * m[(2, 2)]
        - m[(0, 2)] * m[(2, 0)]
        + m[(1, 1)] * m[(2, 2)]
        - m[(1, 2)] * m[(2, 1)];
    let det = m.determinant();
    // lambda^3 + c2 lambda^2 + c1 lambda + c0
    let (c2, c1, c0) = (-tr, minors, -det);
    let poly = |z: Complex64| ((z + c2) * z + c1) * z + c0;
    let dpoly = |z: Complex64| (3.0 * z + 2.0 * c2) * z + c1;

    let radius = 1.0 + c2.norm().max(c1.norm()).max(c0.norm());
    let seed = Complex64::new(0.4, 0.9);
    let mut z = [
        seed * radius,
        seed * seed * radius,
        seed * seed * seed * radius,
    ];
    for _ in 0..500 {
        let mut delta = 0.0f64;
        for i in 0..3 {
            let mut denom = ONE;
            for j in 0..3 {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            if denom == ZERO {
                denom = Complex64::new(f64::EPSILON, 0.0);
            }
            let step = poly(z[i]) / denom;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta <= 1e-15 * radius {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let d = dpoly(*zi);
            if d == ZERO {
                break;
            }
            let step = poly(*zi) / d;
            if !step.is_finite() {
                break;
            }
            *zi -= step;
        }
    }
    z.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    z
}

/// Eigendecomposition `M = V diag(lambda) V^-1`.
#[derive(Debug, Clone)]
pub struct Eigen3 {
    pub values: [Complex64; 3],
    pub vectors: CMat3,
    pub vectors_inv: CMat3,
    /// 1-norm condition number of `vectors`.
    pub cond: f64,
}

impl Eigen3 {
    pub fn new(m: &CMat3) -> Option<Self> {
        let values = eigenvalues(m);
        let mut vectors = CMat3::zeros();
        for (k, &lambda) in values.iter().enumerate() {
            let shifted = m - CMat3::identity() * lambda;
            let rows = [
                shifted.row(0).transpose(),
                shifted.row(1).transpose(),
                shifted.row(2).transpose(),
            ];
            // the null vector is orthogonal (bilinearly) to every row
            let v = [(0, 1), (0, 2), (1, 2)]
                .iter()
                .map(|&(i, j)| rows[i].cross(&rows[j]))
                .max_by(|a, b| a.norm().total_cmp(&b.norm()))
                .unwrap();
            let norm = v.norm();
            if norm == 0.0 || !norm.is_finite() {
                return None;
            }
            vectors.set_column(k, &(v / Complex64::new(norm, 0.0)));
        }
        let lu = Lu3::new(&vectors)?;
        let vectors_inv = lu.inverse();
        let cond = norm1(&vectors) * norm1(&vectors_inv);
        Some(Self {
            values,
            vectors,
            vectors_inv,
            cond,
        })
    }

    /// `exp(s M)` for a complex scalar `s`.
    pub fn exp_scaled(&self, s: Complex64) -> CMat3 {
        let d = CMat3::from_diagonal(&CVec3::from_fn(|i, _| (self.values[i] * s).exp()));
        self.vectors * d * self.vectors_inv
    }
}

/// Eigenvector condition number above which the eigendecomposition route is
/// abandoned in favour of Padé.
pub const EIG_COND_LIMIT: f64 = 1e8;

const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371920351148152;

/// Matrix exponential by scaling and squaring with the degree-13 Padé
/// approximant.
pub fn expm_pade(a: &CMat3) -> CMat3 {
    let norm = norm1(a);
    let s = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as i32
    } else {
        0
    };
    let a = a / Complex64::new(2f64.powi(s), 0.0);
    let b = |k: usize| Complex64::new(PADE13[k], 0.0);
    let id = CMat3::identity();
    let a2 = a * a;
    let a4 = a2 * a2;
    let a6 = a4 * a2;
    let u_inner =
        a6 * (a6 * b(13) + a4 * b(11) + a2 * b(9)) + a6 * b(7) + a4 * b(5) + a2 * b(3) + id * b(1);
    let u = a * u_inner;
    let v =
        a6 * (a6 * b(12) + a4 * b(10) + a2 * b(8)) + a6 * b(6) + a4 * b(4) + a2 * b(2) + id * b(0);
    let q = v - u;
    let p = v + u;
    let lu = Lu3::new(&q).expect("Padé denominator is nonsingular after scaling");
    let mut r = CMat3::zeros();
    for j in 0..3 {
        r.set_column(j, &lu.solve(&p.column(j).into_owned()));
    }
    for _ in 0..s {
        r = r * r;
    }
    r
}

/// Which route produced a matrix exponential.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpmRoute {
    Eigen,
    Pade,
}

/// `exp(-M t)`: eigendecomposition when the eigenvector basis is well
/// conditioned, Padé otherwise.
pub fn expm_neg(m: &CMat3, t: f64) -> (CMat3, ExpmRoute) {
    match Eigen3::new(m) {
        Some(e) if e.cond < EIG_COND_LIMIT => {
            (e.exp_scaled(Complex64::new(-t, 0.0)), ExpmRoute::Eigen)
        }
        _ => (expm_pade(&(m * Complex64::new(-t, 0.0))), ExpmRoute::Pade),
    }
}
