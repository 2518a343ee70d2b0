//! The Peres-Mermin square, the quantum states and distant settings of the
//! scenarios, and the builders for every inequality expression.
//!
//! Alice holds qubits 1 and 2 (the square acts on them), Bob holds qubit 3,
//! and in the four-qubit scenario Charlie holds qubit 4.

use crate::error::{CtxError, Result};
use crate::tensor::{pauli_string_from_str, ComplexMatrix, Observable, Pauli};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

/// Names of the nine square observables.
///
/// Rows of the square: (A, B, C) = (z1, z2, z1z2), (a, b, c) = (x2, x1, x1x2),
/// (alpha, beta, gamma) = (z1x2, x1z2, y1y2). Rows and the first two columns
/// multiply to +I, the third column (C, c, gamma) to -I.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MerminObs {
    A,
    B,
    C,
    LowA,
    LowB,
    LowC,
    Alpha,
    Beta,
    Gamma,
}

impl MerminObs {
    pub const ALL: [MerminObs; 9] = [
        MerminObs::A,
        MerminObs::B,
        MerminObs::C,
        MerminObs::LowA,
        MerminObs::LowB,
        MerminObs::LowC,
        MerminObs::Alpha,
        MerminObs::Beta,
        MerminObs::Gamma,
    ];

    pub fn index(self) -> usize {
        Self::ALL.iter().position(|&o| o == self).expect("in ALL")
    }

    pub fn as_str(self) -> &'static str {
        match self {
            MerminObs::A => "A",
            MerminObs::B => "B",
            MerminObs::C => "C",
            MerminObs::LowA => "a",
            MerminObs::LowB => "b",
            MerminObs::LowC => "c",
            MerminObs::Alpha => "α",
            MerminObs::Beta => "β",
            MerminObs::Gamma => "γ",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "A" => Ok(MerminObs::A),
            "B" => Ok(MerminObs::B),
            "C" => Ok(MerminObs::C),
            "a" => Ok(MerminObs::LowA),
            "b" => Ok(MerminObs::LowB),
            "c" => Ok(MerminObs::LowC),
            "α" | "alpha" => Ok(MerminObs::Alpha),
            "β" | "beta" => Ok(MerminObs::Beta),
            "γ" | "gamma" => Ok(MerminObs::Gamma),
            other => Err(CtxError::UnknownLabel(other.to_string())),
        }
    }
}

impl fmt::Display for MerminObs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Names of the distant settings: P, Q on Bob's qubit, U, V on Charlie's.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DistantObs {
    P,
    Q,
    U,
    V,
}

impl DistantObs {
    pub const ALL: [DistantObs; 4] = [DistantObs::P, DistantObs::Q, DistantObs::U, DistantObs::V];

    pub fn index(self) -> usize {
        Self::ALL.iter().position(|&o| o == self).expect("in ALL")
    }

    pub fn as_str(self) -> &'static str {
        match self {
            DistantObs::P => "P",
            DistantObs::Q => "Q",
            DistantObs::U => "U",
            DistantObs::V => "V",
        }
    }
}

impl fmt::Display for DistantObs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The nine two-qubit observables of the square.
pub struct MerminSquare {
    obs: [Observable; 9],
}

impl MerminSquare {
    pub fn new() -> Self {
        let build = |name: MerminObs, paulis: &str| {
            pauli_string_from_str(paulis)
                .expect("square member is a valid Pauli string")
                .renamed(name.as_str())
        };
        MerminSquare {
            obs: [
                build(MerminObs::A, "zi"),
                build(MerminObs::B, "iz"),
                build(MerminObs::C, "zz"),
                build(MerminObs::LowA, "ix"),
                build(MerminObs::LowB, "xi"),
                build(MerminObs::LowC, "xx"),
                build(MerminObs::Alpha, "zx"),
                build(MerminObs::Beta, "xz"),
                build(MerminObs::Gamma, "yy"),
            ],
        }
    }

    pub fn observable(&self, which: MerminObs) -> &Observable {
        &self.obs[which.index()]
    }

    /// The six measurement contexts: three rows followed by three columns.
    pub fn contexts(&self) -> [[MerminObs; 3]; 6] {
        use MerminObs::*;
        [
            [A, B, C],
            [LowA, LowB, LowC],
            [Alpha, Beta, Gamma],
            [A, LowA, Alpha],
            [B, LowB, Beta],
            [C, LowC, Gamma],
        ]
    }

    /// Row `i` of the square (0-based).
    pub fn row(&self, i: usize) -> [&Observable; 3] {
        let ctx = self.contexts()[i];
        [0, 1, 2].map(|k| self.observable(ctx[k]))
    }

    /// Column `i` of the square (0-based).
    pub fn col(&self, i: usize) -> [&Observable; 3] {
        let ctx = self.contexts()[3 + i];
        [0, 1, 2].map(|k| self.observable(ctx[k]))
    }
}

impl Default for MerminSquare {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Party {
    Alice,
    Bob,
    Charlie,
}

/// A density matrix together with the qubit-to-party map.
#[derive(Clone)]
pub struct QuantumState {
    rho: ComplexMatrix,
    parties: Vec<Party>,
}

impl QuantumState {
    /// Validates hermiticity, unit trace (1e-12) and positive
    /// semidefiniteness (smallest eigenvalue >= -1e-10).
    pub fn from_density(rho: ComplexMatrix, parties: Vec<Party>) -> Result<Self> {
        if rho.dim() != 1 << parties.len() {
            return Err(CtxError::DimensionMismatch {
                left: rho.dim(),
                right: 1 << parties.len(),
            });
        }
        let h = rho.hermiticity_deviation();
        if h > 1e-12 {
            return Err(CtxError::BadState(format!(
                "density matrix not Hermitian (deviation {h:.3e})"
            )));
        }
        let t = rho.trace();
        if (t.re - 1.0).abs() > 1e-12 || t.im.abs() > 1e-12 {
            return Err(CtxError::BadState(format!("trace {t} is not 1")));
        }
        if !rho.is_psd(1e-10) {
            return Err(CtxError::BadState(
                "density matrix is not positive semidefinite".into(),
            ));
        }
        Ok(QuantumState { rho, parties })
    }

    /// Builds the projector onto a normalized state vector.
    pub fn pure(amplitudes: &[Complex64], parties: Vec<Party>) -> Result<Self> {
        let dim = amplitudes.len();
        if dim != 1 << parties.len() {
            return Err(CtxError::DimensionMismatch {
                left: dim,
                right: 1 << parties.len(),
            });
        }
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(CtxError::BadState(format!(
                "state vector has squared norm {norm}, expected 1"
            )));
        }
        let mut rho = ComplexMatrix::zeros(dim)?;
        for r in 0..dim {
            for c in 0..dim {
                rho[(r, c)] = amplitudes[r] * amplitudes[c].conj();
            }
        }
        Self::from_density(rho, parties)
    }

    pub fn n_qubits(&self) -> usize {
        self.parties.len()
    }

    pub fn rho(&self) -> &ComplexMatrix {
        &self.rho
    }

    pub fn parties(&self) -> &[Party] {
        &self.parties
    }
}

fn check_range(
    name: &'static str,
    value: f64,
    lo: f64,
    hi: f64,
    range: &'static str,
) -> Result<()> {
    if !(lo..=hi).contains(&value) || !value.is_finite() {
        return Err(CtxError::BadParameter { name, value, range });
    }
    Ok(())
}

fn chi_vector(chi_angle: f64) -> [Complex64; 2] {
    [
        Complex64::new(chi_angle.cos(), 0.0),
        Complex64::new(chi_angle.sin(), 0.0),
    ]
}

fn outer(amps: &[Complex64]) -> Result<ComplexMatrix> {
    let mut m = ComplexMatrix::zeros(amps.len())?;
    for r in 0..amps.len() {
        for c in 0..amps.len() {
            m[(r, c)] = amps[r] * amps[c].conj();
        }
    }
    Ok(m)
}

fn mix_with_white_noise(pure: &ComplexMatrix, visibility: f64) -> Result<ComplexMatrix> {
    let dim = pure.dim();
    let id = ComplexMatrix::identity(dim)?;
    Ok(pure
        .scale_re(visibility)
        .add(&id.scale_re((1.0 - visibility) / dim as f64)))
}

/// Ancilla |chi> on qubit 1, and on qubits 2-3 the singlet
/// (|01> - |10>)/sqrt(2) mixed with white noise at the given visibility.
pub fn singlet_state(chi_angle: f64, visibility: f64) -> Result<QuantumState> {
    check_range("chi_angle", chi_angle, 0.0, FRAC_PI_2, "[0, pi/2]")?;
    check_range("visibility", visibility, 0.0, 1.0, "[0, 1]")?;
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let psi = [Complex64::new(0.0, 0.0), s, -s, Complex64::new(0.0, 0.0)];
    let rho23 = mix_with_white_noise(&outer(&psi)?, visibility)?;
    let rho = outer(&chi_vector(chi_angle))?.kron(&rho23)?;
    QuantumState::from_density(rho, vec![Party::Alice, Party::Alice, Party::Bob])
}

/// Ancilla |chi(pi/8)> on qubit 1 and the pure partially entangled state
/// cos(theta)|01> - sin(theta)|10> on qubits 2-3.
pub fn nonmax_state(theta: f64) -> Result<QuantumState> {
    nonmax_state_with_chi(theta, PI / 8.0)
}

pub fn nonmax_state_with_chi(theta: f64, chi_angle: f64) -> Result<QuantumState> {
    check_range("theta", theta, 0.0, FRAC_PI_2, "[0, pi/2]")?;
    check_range("chi_angle", chi_angle, 0.0, FRAC_PI_2, "[0, pi/2]")?;
    let (d1, d2) = (theta.cos(), theta.sin());
    let chi = chi_vector(chi_angle);
    let pair = [
        Complex64::new(0.0, 0.0),
        Complex64::new(d1, 0.0),
        Complex64::new(-d2, 0.0),
        Complex64::new(0.0, 0.0),
    ];
    let mut amps = Vec::with_capacity(8);
    for &x in &chi {
        for &y in &pair {
            amps.push(x * y);
        }
    }
    QuantumState::pure(&amps, vec![Party::Alice, Party::Alice, Party::Bob])
}

/// Ancilla |chi(pi/8)> on qubit 1, and on qubits 2-4 the GHZ-class state
/// (|000>+|001>+|010>-|011>+|100>-|101>-|110>-|111>)/(2 sqrt 2), mixed with
/// white noise at the given visibility.
pub fn ghz_state(visibility: f64) -> Result<QuantumState> {
    ghz_state_with_chi(visibility, PI / 8.0)
}

pub fn ghz_state_with_chi(visibility: f64, chi_angle: f64) -> Result<QuantumState> {
    check_range("visibility", visibility, 0.0, 1.0, "[0, 1]")?;
    check_range("chi_angle", chi_angle, 0.0, FRAC_PI_2, "[0, pi/2]")?;
    let signs = [1.0, 1.0, 1.0, -1.0, 1.0, -1.0, -1.0, -1.0];
    let amp = 1.0 / (2.0 * 2.0f64.sqrt());
    let psi: Vec<Complex64> = signs
        .iter()
        .map(|&s| Complex64::new(s * amp, 0.0))
        .collect();
    let rho234 = mix_with_white_noise(&outer(&psi)?, visibility)?;
    let rho = outer(&chi_vector(chi_angle))?.kron(&rho234)?;
    QuantumState::from_density(
        rho,
        vec![Party::Alice, Party::Alice, Party::Bob, Party::Charlie],
    )
}

/// The distant +/-1 settings: P, Q for Bob, optionally U, V for Charlie.
pub struct DistantSettings {
    p: Observable,
    q: Observable,
    u: Option<Observable>,
    v: Option<Observable>,
}

impl DistantSettings {
    pub fn bipartite(p: Observable, q: Observable) -> Result<Self> {
        Self::check_setting(&p)?;
        Self::check_setting(&q)?;
        Ok(DistantSettings {
            p,
            q,
            u: None,
            v: None,
        })
    }

    pub fn tripartite(p: Observable, q: Observable, u: Observable, v: Observable) -> Result<Self> {
        for o in [&p, &q, &u, &v] {
            Self::check_setting(o)?;
        }
        Ok(DistantSettings {
            p,
            q,
            u: Some(u),
            v: Some(v),
        })
    }

    // single-qubit traceless involution, i.e. a unit Bloch vector
    fn check_setting(o: &Observable) -> Result<()> {
        if o.qubits().len() != 1 {
            return Err(CtxError::BadQubits(o.qubits().to_vec()));
        }
        let t = o.matrix().trace();
        if t.norm() > 1e-12 {
            return Err(CtxError::BadState(format!(
                "distant setting {} must be traceless, trace = {t}",
                o.name()
            )));
        }
        Ok(())
    }

    pub fn get(&self, which: DistantObs) -> Result<&Observable> {
        match which {
            DistantObs::P => Ok(&self.p),
            DistantObs::Q => Ok(&self.q),
            DistantObs::U => self
                .u
                .as_ref()
                .ok_or_else(|| CtxError::MissingDistant("U".into())),
            DistantObs::V => self
                .v
                .as_ref()
                .ok_or_else(|| CtxError::MissingDistant("V".into())),
        }
    }

    pub fn is_tripartite(&self) -> bool {
        self.u.is_some()
    }
}

fn zx_setting(name: &str, qubit: usize, z_coeff: f64, x_coeff: f64) -> Observable {
    let m = Pauli::Z
        .matrix()
        .scale_re(z_coeff)
        .add(&Pauli::X.matrix().scale_re(x_coeff));
    Observable::new(name, vec![qubit], m).expect("unit zx combination is a valid setting")
}

/// Bob's settings for the singlet scenario:
/// P = -(z3 + x3)/sqrt(2), Q = -(z3 - x3)/sqrt(2).
pub fn bob_settings_singlet() -> DistantSettings {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    DistantSettings::bipartite(zx_setting("P", 3, -s, -s), zx_setting("Q", 3, -s, s))
        .expect("valid settings")
}

/// Bob's settings tuned to the partially entangled state with angle `theta`:
/// P = -cos(t) z3 - sin(t) x3 and Q = -cos(t) z3 + sin(t) x3, where
/// cos(t) = 1/sqrt(1 + 4 (d1 d2)^2) and sin(t) takes the nonnegative branch.
/// At theta = pi/4 this reduces to [`bob_settings_singlet`].
pub fn bob_settings_nonmax(theta: f64) -> Result<DistantSettings> {
    check_range("theta", theta, 0.0, FRAC_PI_2, "[0, pi/2]")?;
    let x = theta.cos() * theta.sin();
    let norm = (1.0 + 4.0 * x * x).sqrt();
    let (ct, st) = (1.0 / norm, 2.0 * x / norm);
    DistantSettings::bipartite(zx_setting("P", 3, -ct, -st), zx_setting("Q", 3, -ct, st))
}

/// Settings for the four-qubit scenario: P = z3, Q = x3, U = z4, V = x4.
pub fn ghz_settings() -> DistantSettings {
    DistantSettings::tripartite(
        zx_setting("P", 3, 1.0, 0.0),
        zx_setting("Q", 3, 0.0, 1.0),
        zx_setting("U", 4, 1.0, 0.0),
        zx_setting("V", 4, 0.0, 1.0),
    )
    .expect("valid settings")
}

/// One signed correlator: an ordered sequence of compatible square
/// observables measured by Alice, the subset of slots whose outcomes enter
/// the product (`product_mask`), and the distant outcomes multiplied in.
///
/// A conditioned correlator such as the AB-product taken within the sequence
/// C, A, B has `sequence = [C, A, B]` and `product_mask = [1, 2]`: C is
/// measured first, its outcome recorded but left out of the product.
#[derive(Debug, Clone)]
pub struct CorrelationSpec {
    pub sequence: Vec<MerminObs>,
    pub product_mask: Vec<usize>,
    pub distant: Vec<DistantObs>,
    pub sign: i8,
    pub label: String,
}

/// A signed sum of correlators with its classical bound.
#[derive(Debug, Clone)]
pub struct InequalityExpression {
    pub name: String,
    pub terms: Vec<CorrelationSpec>,
    pub classical_bound: i64,
}

impl InequalityExpression {
    /// Structural checks: masks in range and duplicate-free, signs +/-1,
    /// and every Alice sequence mutually compatible.
    pub fn validate(&self, square: &MerminSquare) -> Result<()> {
        for t in &self.terms {
            if t.sign != 1 && t.sign != -1 {
                return Err(CtxError::BadRequest(format!(
                    "term {} has sign {}",
                    t.label, t.sign
                )));
            }
            for &m in &t.product_mask {
                if m >= t.sequence.len() {
                    return Err(CtxError::BadRequest(format!(
                        "term {} mask index {m} out of range",
                        t.label
                    )));
                }
            }
            let mut mask = t.product_mask.clone();
            mask.dedup();
            if mask.len() != t.product_mask.len() {
                return Err(CtxError::BadRequest(format!(
                    "term {} has duplicate mask entries",
                    t.label
                )));
            }
            for i in 0..t.sequence.len() {
                for j in (i + 1)..t.sequence.len() {
                    let (a, b) = (
                        square.observable(t.sequence[i]),
                        square.observable(t.sequence[j]),
                    );
                    if !a.commutes(b)? {
                        return Err(CtxError::NonCommutingContext(
                            a.name().to_string(),
                            b.name().to_string(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// One row of the shared sequence table: an ordered Alice triple with its
/// sign in the product expression, its sign and distant setting in the
/// conditioned-correlator expression, and the distant pair used in the
/// four-qubit variant.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SeqInfo {
    pub seq: [MerminObs; 3],
    pub t_sign: i8,
    pub s_sign: i8,
    pub s_distant: DistantObs,
    pub sp_distant: [DistantObs; 2],
}

use DistantObs::{P, Q, U, V};
use MerminObs::{Alpha, Beta, Gamma, LowA, LowB, LowC, A, B, C};

/// The twelve ordered sequences, two per context, in the order the product
/// expression lists them.
pub(crate) const SEQ_TABLE: [SeqInfo; 12] = [
    SeqInfo {
        seq: [C, A, B],
        t_sign: 1,
        s_sign: 1,
        s_distant: P,
        sp_distant: [P, V],
    },
    SeqInfo {
        seq: [B, A, C],
        t_sign: 1,
        s_sign: 1,
        s_distant: P,
        sp_distant: [P, V],
    },
    SeqInfo {
        seq: [Alpha, Beta, Gamma],
        t_sign: 1,
        s_sign: 1,
        s_distant: P,
        sp_distant: [P, U],
    },
    SeqInfo {
        seq: [Beta, Alpha, Gamma],
        t_sign: 1,
        s_sign: 1,
        s_distant: P,
        sp_distant: [P, V],
    },
    SeqInfo {
        seq: [LowA, A, Alpha],
        t_sign: 1,
        s_sign: 1,
        s_distant: P,
        sp_distant: [P, U],
    },
    SeqInfo {
        seq: [Alpha, A, LowA],
        t_sign: 1,
        s_sign: -1,
        s_distant: Q,
        sp_distant: [Q, V],
    },
    SeqInfo {
        seq: [B, LowB, Beta],
        t_sign: 1,
        s_sign: 1,
        s_distant: Q,
        sp_distant: [Q, U],
    },
    SeqInfo {
        seq: [Beta, B, LowB],
        t_sign: 1,
        s_sign: 1,
        s_distant: Q,
        sp_distant: [Q, U],
    },
    SeqInfo {
        seq: [LowC, LowA, LowB],
        t_sign: 1,
        s_sign: 1,
        s_distant: P,
        sp_distant: [P, U],
    },
    SeqInfo {
        seq: [LowA, LowB, LowC],
        t_sign: 1,
        s_sign: -1,
        s_distant: Q,
        sp_distant: [Q, V],
    },
    SeqInfo {
        seq: [C, LowC, Gamma],
        t_sign: -1,
        s_sign: -1,
        s_distant: Q,
        sp_distant: [Q, U],
    },
    SeqInfo {
        seq: [LowC, C, Gamma],
        t_sign: -1,
        s_sign: 1,
        s_distant: Q,
        sp_distant: [Q, V],
    },
];

/// Display order of the conditioned-correlator terms (indices into
/// [`SEQ_TABLE`]); the third-column and second-row pairs swap places there.
pub(crate) const S_ORDER: [usize; 12] = [0, 1, 2, 3, 4, 5, 6, 7, 10, 11, 8, 9];

fn term_label(sign: i8, inner: &str, conditioned_on: Option<MerminObs>) -> String {
    let prefix = if sign < 0 { "-" } else { "" };
    match conditioned_on {
        Some(w) => format!("{prefix}⟨{inner}⟩_{w}"),
        None => format!("{prefix}⟨{inner}⟩"),
    }
}

/// The twelve-term product expression: every context measured in two orders,
/// all three outcomes multiplied. Noncontextual bound 8; quantum value 12
/// for every state.
pub fn expression_t() -> InequalityExpression {
    let terms = SEQ_TABLE
        .iter()
        .map(|info| {
            let inner: String = info.seq.iter().map(|o| o.as_str()).collect();
            CorrelationSpec {
                sequence: info.seq.to_vec(),
                product_mask: vec![0, 1, 2],
                distant: vec![],
                sign: info.t_sign,
                label: term_label(info.t_sign, &inner, None),
            }
        })
        .collect();
    InequalityExpression {
        name: "T".into(),
        terms,
        classical_bound: 8,
    }
}

fn s_like_terms(tripartite: bool) -> Vec<CorrelationSpec> {
    S_ORDER
        .iter()
        .map(|&i| {
            let info = &SEQ_TABLE[i];
            let distant: Vec<DistantObs> = if tripartite {
                info.sp_distant.to_vec()
            } else {
                vec![info.s_distant]
            };
            let mut inner: String = info.seq[1..].iter().map(|o| o.as_str()).collect();
            for d in &distant {
                inner.push_str(d.as_str());
            }
            CorrelationSpec {
                sequence: info.seq.to_vec(),
                product_mask: vec![1, 2],
                distant,
                sign: info.s_sign,
                label: term_label(info.s_sign, &inner, Some(info.seq[0])),
            }
        })
        .collect()
}

/// The twelve conditioned correlators with Bob's settings folded in.
/// Noncontextual bound 10; local (order-dependent) bound 12.
pub fn expression_s() -> InequalityExpression {
    InequalityExpression {
        name: "S".into(),
        terms: s_like_terms(false),
        classical_bound: 12,
    }
}

/// The four-qubit variant of [`expression_s`], with a Bob and a Charlie
/// outcome multiplied into every term.
pub fn expression_s_prime() -> InequalityExpression {
    InequalityExpression {
        name: "S'".into(),
        terms: s_like_terms(true),
        classical_bound: 12,
    }
}

fn concat(
    name: &str,
    a: InequalityExpression,
    b: InequalityExpression,
    bound: i64,
) -> InequalityExpression {
    let mut terms = a.terms;
    terms.extend(b.terms);
    InequalityExpression {
        name: name.into(),
        terms,
        classical_bound: bound,
    }
}

/// T + S with the local hidden-variable bound 18.
pub fn expression_t_plus_s() -> InequalityExpression {
    concat("T+S", expression_t(), expression_s(), 18)
}

/// T + S' with the local hidden-variable bound 18.
pub fn expression_t_plus_s_prime() -> InequalityExpression {
    concat("T+S'", expression_t(), expression_s_prime(), 18)
}

fn first_measurement_term(obs: MerminObs, distant: &[DistantObs], sign: i8) -> CorrelationSpec {
    let mut inner = obs.as_str().to_string();
    for d in distant {
        inner.push_str(d.as_str());
    }
    CorrelationSpec {
        sequence: vec![obs],
        product_mask: vec![0],
        distant: distant.to_vec(),
        sign,
        label: term_label(sign, &inner, None),
    }
}

/// The three CHSH inequalities between fresh square observables and Bob,
/// each bounded by 2: (C, alpha), (beta, c) and (B, a) against (P, Q).
pub fn chsh_expressions() -> [InequalityExpression; 3] {
    let data: [(&str, MerminObs, MerminObs); 3] = [
        ("CHSH-1", C, Alpha),
        ("CHSH-2", Beta, LowC),
        ("CHSH-3", B, LowA),
    ];
    data.map(|(name, o1, o2)| InequalityExpression {
        name: name.into(),
        terms: vec![
            first_measurement_term(o1, &[P], 1),
            first_measurement_term(o1, &[Q], 1),
            first_measurement_term(o2, &[P], 1),
            first_measurement_term(o2, &[Q], -1),
        ],
        classical_bound: 2,
    })
}

/// The sum of the three CHSH expressions, bounded by 6.
pub fn bell_sum_bipartite() -> InequalityExpression {
    let [c1, c2, c3] = chsh_expressions();
    let mut terms = c1.terms;
    terms.extend(c2.terms);
    terms.extend(c3.terms);
    InequalityExpression {
        name: "Bell sum".into(),
        terms,
        classical_bound: 6,
    }
}

/// The tripartite Bell sum over fresh square observables and the pairs of
/// Bob and Charlie outcomes, bounded by 6.
pub fn bell_sum_tripartite() -> InequalityExpression {
    let data: [(MerminObs, [DistantObs; 2], i8); 12] = [
        (C, [P, V], 1),
        (C, [Q, U], 1),
        (Alpha, [P, U], 1),
        (Alpha, [Q, V], -1),
        (Beta, [P, V], 1),
        (Beta, [Q, U], 1),
        (LowC, [P, U], 1),
        (LowC, [Q, V], -1),
        (B, [P, V], 1),
        (B, [Q, U], 1),
        (LowA, [P, U], 1),
        (LowA, [Q, V], -1),
    ];
    InequalityExpression {
        name: "Bell sum (tripartite)".into(),
        terms: data
            .iter()
            .map(|(o, d, s)| first_measurement_term(*o, d, *s))
            .collect(),
        classical_bound: 6,
    }
}
