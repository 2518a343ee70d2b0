//! Dense complex matrices and +/-1 observables on up to four qubits.
//!
//! Everything here is sized for the scenarios in this crate: Hilbert space
//! dimensions 2, 4, 8 and 16, observables that square to the identity, and
//! eigenprojectors obtained algebraically as (I +/- O)/2. Qubit 1 is the
//! leftmost tensor factor and basis states are ordered |q1 q2 ...> with |0>
//! before |1>.

use crate::error::{CtxError, Result};
use num_complex::Complex64;
use std::fmt;

/// Largest supported Hilbert space dimension (four qubits).
pub const MAX_DIM: usize = 16;

/// Tolerance for structural identities (hermiticity, involution, commutators).
pub const STRUCT_TOL: f64 = 1e-12;

const DIMS: [usize; 4] = [2, 4, 8, 16];

/// Row-major dense complex matrix of dimension 2, 4, 8 or 16.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Result<Self> {
        if !DIMS.contains(&dim) {
            return Err(CtxError::BadDimension(dim));
        }
        Ok(Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        Ok(m)
    }

    /// Builds a matrix from real entries, row by row.
    pub fn from_real(rows: &[&[f64]]) -> Result<Self> {
        let dim = rows.len();
        let mut m = Self::zeros(dim)?;
        for (r, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(CtxError::DimensionMismatch {
                    left: dim,
                    right: row.len(),
                });
            }
            for (c, &x) in row.iter().enumerate() {
                m[(r, c)] = Complex64::new(x, 0.0);
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matmul dimension mismatch");
        let n = self.dim;
        let mut out = Self {
            dim: n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        };
        for r in 0..n {
            for k in 0..n {
                let a = self.data[r * n + k];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for c in 0..n {
                    out.data[r * n + c] += a * rhs.data[k * n + c];
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "add dimension mismatch");
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&rhs.data) {
            *x += y;
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "sub dimension mismatch");
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&rhs.data) {
            *x -= y;
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x *= s;
        }
        out
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = self.clone();
        for r in 0..n {
            for c in 0..n {
                out.data[r * n + c] = self.data[c * n + r].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    /// Kronecker product; the result dimension must stay within [`MAX_DIM`].
    pub fn kron(&self, rhs: &Self) -> Result<Self> {
        let dim = self.dim * rhs.dim;
        if dim > MAX_DIM {
            return Err(CtxError::BadDimension(dim));
        }
        let mut out = Self::zeros(dim)?;
        for r1 in 0..self.dim {
            for c1 in 0..self.dim {
                let a = self[(r1, c1)];
                for r2 in 0..rhs.dim {
                    for c2 in 0..rhs.dim {
                        out[(r1 * rhs.dim + r2, c1 * rhs.dim + c2)] = a * rhs[(r2, c2)];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Largest entrywise absolute difference to another matrix.
    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        assert_eq!(self.dim, rhs.dim, "comparison dimension mismatch");
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, rhs: &Self, tol: f64) -> bool {
        self.dim == rhs.dim && self.max_abs_diff(rhs) <= tol
    }

    /// Largest deviation from hermiticity, max_ij |M_ij - conj(M_ji)|.
    pub fn hermiticity_deviation(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for r in 0..n {
            for c in 0..n {
                worst = worst.max((self.data[r * n + c] - self.data[c * n + r].conj()).norm());
            }
        }
        worst
    }

    /// Largest entrywise deviation of M^2 from the identity.
    pub fn involution_deviation(&self) -> f64 {
        let id = Self::identity(self.dim).expect("dim already validated");
        self.matmul(self).max_abs_diff(&id)
    }

    /// Checks positive semidefiniteness up to `shift`: attempts a Cholesky
    /// factorization of M + shift*I, which succeeds exactly when the smallest
    /// eigenvalue is >= -shift (up to rounding). Assumes M is Hermitian.
    pub fn is_psd(&self, shift: f64) -> bool {
        let n = self.dim;
        let mut a = self.clone();
        for i in 0..n {
            a[(i, i)] += Complex64::new(shift, 0.0);
        }
        let mut l = vec![Complex64::new(0.0, 0.0); n * n];
        for j in 0..n {
            let mut d = a[(j, j)].re;
            for k in 0..j {
                d -= l[j * n + k].norm_sqr();
            }
            if d < 0.0 {
                return false;
            }
            let dj = d.sqrt();
            l[j * n + j] = Complex64::new(dj, 0.0);
            for i in (j + 1)..n {
                let mut s = a[(i, j)];
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k].conj();
                }
                l[i * n + j] = if dj > 0.0 {
                    s / dj
                } else {
                    // zero pivot: the column must vanish too, otherwise not PSD
                    if s.norm() > 1e-7 {
                        return false;
                    }
                    Complex64::new(0.0, 0.0)
                };
            }
        }
        true
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.dim + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.dim + c]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for r in 0..self.dim {
            for c in 0..self.dim {
                let v = self[(r, c)];
                write!(f, " {:+.3}{:+.3}i", v.re, v.im)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.dim {
            for c in 0..self.dim {
                let v = self[(r, c)];
                if v.im.abs() < 1e-12 {
                    write!(f, "{:>6}", format!("{:+.1}", v.re))?;
                } else if v.re.abs() < 1e-12 {
                    write!(f, "{:>6}", format!("{:+.1}i", v.im))?;
                } else {
                    write!(f, " {:+.1}{:+.1}i", v.re, v.im)?;
                }
            }
            if r + 1 < self.dim {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// Single-qubit Pauli label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_char(c: char) -> Result<Self> {
        match c.to_ascii_lowercase() {
            'i' | '1' => Ok(Pauli::I),
            'x' => Ok(Pauli::X),
            'y' => Ok(Pauli::Y),
            'z' => Ok(Pauli::Z),
            other => Err(CtxError::UnknownLabel(other.to_string())),
        }
    }

    pub fn matrix(self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(2).expect("dim 2 is valid");
        let (o, l) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0));
        match self {
            Pauli::I => {
                m[(0, 0)] = o;
                m[(1, 1)] = o;
            }
            Pauli::X => {
                m[(0, 1)] = o;
                m[(1, 0)] = o;
            }
            Pauli::Y => {
                m[(0, 1)] = -l;
                m[(1, 0)] = l;
            }
            Pauli::Z => {
                m[(0, 0)] = o;
                m[(1, 1)] = -o;
            }
        }
        m
    }

    fn letter(self) -> char {
        match self {
            Pauli::I => 'i',
            Pauli::X => 'x',
            Pauli::Y => 'y',
            Pauli::Z => 'z',
        }
    }
}

/// A +/-1-valued observable acting on a subset of qubits.
///
/// The local matrix lives on the listed qubits (in ascending order, 1-based);
/// [`Observable::embed`] pads with identities for a register of `n` qubits.
#[derive(Clone)]
pub struct Observable {
    name: String,
    qubits: Vec<usize>,
    matrix: ComplexMatrix,
}

impl Observable {
    /// Validates hermiticity and the involution property O^2 = I, both
    /// within [`STRUCT_TOL`], so eigenvalues are exactly +/-1.
    pub fn new(name: impl Into<String>, qubits: Vec<usize>, matrix: ComplexMatrix) -> Result<Self> {
        if qubits.is_empty()
            || qubits.len() > 4
            || qubits[0] == 0
            || qubits.windows(2).any(|w| w[0] >= w[1])
            || *qubits.last().expect("nonempty") > 4
        {
            return Err(CtxError::BadQubits(qubits));
        }
        if matrix.dim() != 1 << qubits.len() {
            return Err(CtxError::DimensionMismatch {
                left: matrix.dim(),
                right: 1 << qubits.len(),
            });
        }
        let h = matrix.hermiticity_deviation();
        if h > STRUCT_TOL {
            return Err(CtxError::NotHermitian(h));
        }
        let inv = matrix.involution_deviation();
        if inv > STRUCT_TOL {
            return Err(CtxError::NotInvolution(inv));
        }
        Ok(Self {
            name: name.into(),
            qubits,
            matrix,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Embeds the local matrix into the full register of `n_qubits`.
    pub fn embed(&self, n_qubits: usize) -> Result<ComplexMatrix> {
        if n_qubits > 4 || *self.qubits.last().expect("nonempty") > n_qubits {
            return Err(CtxError::DimensionMismatch {
                left: 1 << n_qubits,
                right: 1 << self.qubits.last().expect("nonempty"),
            });
        }
        let dim = 1 << n_qubits;
        // bit position of qubit q (1-based, leftmost factor = most significant)
        let bit = |q: usize| n_qubits - q;
        let mask: usize = self.qubits.iter().map(|&q| 1usize << bit(q)).sum();
        let extract = |i: usize| -> usize {
            self.qubits
                .iter()
                .fold(0usize, |acc, &q| (acc << 1) | ((i >> bit(q)) & 1))
        };
        let mut out = ComplexMatrix::zeros(dim)?;
        for r in 0..dim {
            for c in 0..dim {
                if (r & !mask) != (c & !mask) {
                    continue;
                }
                out[(r, c)] = self.matrix[(extract(r), extract(c))];
            }
        }
        Ok(out)
    }

    /// Eigenprojectors of the embedded operator, (P_plus, P_minus).
    pub fn embedded_projectors(&self, n_qubits: usize) -> Result<(ComplexMatrix, ComplexMatrix)> {
        eigenprojectors(&self.embed(n_qubits)?)
    }

    /// Whether the two observables commute once embedded in a common register.
    pub fn commutes(&self, other: &Observable) -> Result<bool> {
        let n =
            (*self.qubits.last().expect("nonempty")).max(*other.qubits.last().expect("nonempty"));
        let a = self.embed(n)?;
        let b = other.embed(n)?;
        Ok(a.matmul(&b).max_abs_diff(&b.matmul(&a)) <= STRUCT_TOL)
    }
}

impl fmt::Debug for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Observable({} on qubits {:?})", self.name, self.qubits)
    }
}

/// Eigenprojectors (P_plus, P_minus) = ((I + M)/2, (I - M)/2) of an
/// involution. Rejects matrices that do not square to the identity.
pub fn eigenprojectors(m: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let inv = m.involution_deviation();
    if inv > STRUCT_TOL {
        return Err(CtxError::NotInvolution(inv));
    }
    let id = ComplexMatrix::identity(m.dim())?;
    Ok((id.add(m).scale_re(0.5), id.sub(m).scale_re(0.5)))
}

/// Builds the observable for a Pauli string such as `[Z, X]` (z1 x2).
///
/// Identity slots are dropped from the acting-qubit set; an all-identity
/// string yields the identity observable (P_plus = I, P_minus = 0).
pub fn pauli_string(labels: &[Pauli]) -> Result<Observable> {
    if labels.is_empty() || labels.len() > 4 {
        return Err(CtxError::BadQubits((1..=labels.len()).collect()));
    }
    let acting: Vec<(usize, Pauli)> = labels
        .iter()
        .enumerate()
        .filter(|(_, p)| **p != Pauli::I)
        .map(|(i, p)| (i + 1, *p))
        .collect();
    if acting.is_empty() {
        return Observable::new("I", vec![1], Pauli::I.matrix());
    }
    let mut name = String::new();
    let mut matrix: Option<ComplexMatrix> = None;
    let mut qubits = Vec::new();
    for (q, p) in acting {
        name.push(p.letter());
        name.push_str(&q.to_string());
        qubits.push(q);
        matrix = Some(match matrix {
            None => p.matrix(),
            Some(m) => m.kron(&p.matrix())?,
        });
    }
    Observable::new(name, qubits, matrix.expect("at least one factor"))
}

/// Parses a Pauli string given per-qubit letters, e.g. `"zx"` for z1 x2.
pub fn pauli_string_from_str(s: &str) -> Result<Observable> {
    let labels: Vec<Pauli> = s.chars().map(Pauli::from_char).collect::<Result<_>>()?;
    pauli_string(&labels)
}
