//! Exact density-matrix oracle for one and two Bell pairs.
//!
//! Qubit order for a pair is (A, B), with A the most significant bit of the
//! computational-basis index. For two pairs the order is (A1, B1, A2, B2):
//! pair `a` is (A1, B1) and pair `b` is (A2, B2); Alice holds A1 and A2.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::{Complex, DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;

const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const PSD_TOL: f64 = 1e-10;
const SIMPLEX_TOL: f64 = 1e-12;
/// Relative eigenvalue size treated as numerical zero.
const ROUNDOFF: f64 = 64.0 * f64::EPSILON;
const NULL_EVENT: f64 = 1e-15;

/// Bell states as columns over |00>, |01>, |10>, |11>, ordered
/// phi+, phi-, psi+, psi-.
const BELL_COLUMNS: [[f64; 4]; 4] = [
    [FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2],
    [FRAC_1_SQRT_2, 0.0, 0.0, -FRAC_1_SQRT_2],
    [0.0, FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0],
    [0.0, FRAC_1_SQRT_2, -FRAC_1_SQRT_2, 0.0],
];

/// Index into Bell-diagonal coefficient arrays.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bell {
    PhiPlus = 0,
    PhiMinus = 1,
    PsiPlus = 2,
    PsiMinus = 3,
}

/// The Bell state `which` as a state vector.
pub fn bell_vector(which: Bell) -> DVector<C64> {
    DVector::from_iterator(4, BELL_COLUMNS[which as usize].iter().map(|&x| C64::new(x, 0.0)))
}

/// Change-of-basis matrix whose columns are the Bell states.
pub fn bell_basis() -> CMatrix {
    CMatrix::from_fn(4, 4, |row, col| C64::new(BELL_COLUMNS[col][row], 0.0))
}

/// A validated density matrix: Hermitian, unit trace and positive
/// semidefinite, with power-of-two dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let n = matrix.nrows();
        if n == 0 || n != matrix.ncols() || !n.is_power_of_two() {
            return Err(Error::InvalidState(format!(
                "dimension {}x{} is not a square power of two",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if matrix.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidState("non-finite entry".into()));
        }
        let asym = max_abs(&(&matrix - matrix.adjoint()));
        if asym > HERMITIAN_TOL {
            return Err(Error::InvalidState(format!("not Hermitian (deviation {asym:e})")));
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace is {trace}, expected 1")));
        }
        let min_eig = hermitian_eigenvalues(&matrix)
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        if min_eig < -PSD_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {min_eig:e}")));
        }
        Ok(Self { matrix })
    }

    /// `|psi><psi|` for a normalized `psi`.
    pub fn pure(psi: &DVector<C64>) -> Result<Self> {
        Self::new(psi * psi.adjoint())
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// `<psi|rho|psi>`.
    pub fn expectation(&self, psi: &DVector<C64>) -> f64 {
        (psi.adjoint() * &self.matrix * psi)[(0, 0)].re
    }

    pub fn tensor(&self, other: &DensityMatrix) -> Result<DensityMatrix> {
        Self::new(self.matrix.kronecker(&other.matrix))
    }

    /// `U rho U^dagger`, re-validated.
    pub fn conjugate(&self, unitary: &CMatrix) -> Result<DensityMatrix> {
        if unitary.nrows() != self.dim() || unitary.ncols() != self.dim() {
            return Err(Error::DimensionMismatch(unitary.nrows(), self.dim()));
        }
        Self::new(unitary * &self.matrix * unitary.adjoint())
    }
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let sym = (m + m.adjoint()) * C64::new(0.5, 0.0);
    SymmetricEigen::new(sym).eigenvalues.iter().copied().collect()
}

/// Eigenvalues with round-off noise removed: anything below
/// `ROUNDOFF * max |lambda|` (including small negatives) becomes zero.
/// Square roots amplify such noise to ~1e-8, which would otherwise dominate
/// the error for rank-deficient states.
fn clean_spectrum(values: &[f64]) -> Vec<f64> {
    let scale = values.iter().fold(0.0f64, |m, l| m.max(l.abs()));
    values
        .iter()
        .map(|&l| if l <= ROUNDOFF * scale { 0.0 } else { l })
        .collect()
}

/// Principal square root of a positive semidefinite Hermitian matrix.
fn psd_sqrt(m: &CMatrix) -> CMatrix {
    let sym = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(sym);
    let values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    let roots = CMatrix::from_diagonal(&DVector::from_iterator(
        values.len(),
        clean_spectrum(&values).into_iter().map(|l| C64::new(l.sqrt(), 0.0)),
    ));
    &eig.eigenvectors * roots * eig.eigenvectors.adjoint()
}

/// Uhlmann fidelity `(Tr sqrt(sqrt(sigma) rho sqrt(sigma)))^2`.
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(rho.dim(), sigma.dim()));
    }
    let root = psd_sqrt(sigma.matrix());
    let inner = &root * rho.matrix() * &root;
    let trace: f64 = clean_spectrum(&hermitian_eigenvalues(&inner))
        .into_iter()
        .map(f64::sqrt)
        .sum();
    Ok((trace * trace).min(1.0))
}

/// A Bell-diagonal two-qubit state, weights on phi+, phi-, psi+, psi-.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellDiagonal {
    coefficients: [f64; 4],
}

impl BellDiagonal {
    pub fn new(coefficients: [f64; 4]) -> Result<Self> {
        if coefficients.iter().any(|c| !c.is_finite() || *c < -SIMPLEX_TOL) {
            return Err(Error::InvalidState(format!(
                "Bell weights must be non-negative, got {coefficients:?}"
            )));
        }
        let total: f64 = coefficients.iter().sum();
        if (total - 1.0).abs() > SIMPLEX_TOL {
            return Err(Error::InvalidState(format!("Bell weights sum to {total}, expected 1")));
        }
        Ok(Self {
            coefficients: coefficients.map(|c| c.max(0.0)),
        })
    }

    pub fn coefficients(&self) -> [f64; 4] {
        self.coefficients
    }

    pub fn weight(&self, which: Bell) -> f64 {
        self.coefficients[which as usize]
    }

    /// Fidelity with phi+.
    pub fn fidelity(&self) -> f64 {
        self.weight(Bell::PhiPlus)
    }

    pub fn to_density(&self) -> DensityMatrix {
        let basis = bell_basis();
        let diag = CMatrix::from_diagonal(&DVector::from_iterator(
            4,
            self.coefficients.iter().map(|&c| C64::new(c, 0.0)),
        ));
        DensityMatrix::new(&basis * diag * basis.adjoint()).expect("Bell-diagonal state is valid")
    }

    /// Diagonal of a two-qubit state in the Bell basis.
    pub fn project(rho: &DensityMatrix) -> Result<Self> {
        if rho.dim() != 4 {
            return Err(Error::DimensionMismatch(rho.dim(), 4));
        }
        let basis = bell_basis();
        let in_bell = basis.adjoint() * rho.matrix() * &basis;
        Self::new([0, 1, 2, 3].map(|i| in_bell[(i, i)].re))
    }
}

/// Largest off-diagonal magnitude of a two-qubit state in the Bell basis.
pub fn bell_off_diagonal(rho: &DensityMatrix) -> f64 {
    let basis = bell_basis();
    let in_bell = basis.adjoint() * rho.matrix() * &basis;
    let mut worst = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                worst = worst.max(in_bell[(i, j)].norm());
            }
        }
    }
    worst
}

/// `F|phi+><phi+| + (1-F)|phi-><phi-|`.
pub fn make_input_state(fidelity: f64) -> Result<BellDiagonal> {
    if !(0.0..=1.0).contains(&fidelity) {
        return Err(Error::invalid(
            "fidelity",
            format!("must lie in [0, 1], got {fidelity}"),
        ));
    }
    BellDiagonal::new([fidelity, 1.0 - fidelity, 0.0, 0.0])
}

/// Result of one 2->1 parity-check block.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockOutcome {
    pub success_probability: f64,
    /// Surviving pair in the Bell basis (diagonal part).
    pub output: BellDiagonal,
    /// Surviving pair as a full density matrix.
    pub state: DensityMatrix,
}

const A1: usize = 3;
const B1: usize = 2;
const A2: usize = 1;
const B2: usize = 0;

/// Basis permutation of the bilateral CNOT: A1 controls A2, B1 controls B2.
fn bilateral_cnot(index: usize) -> usize {
    let mut out = index;
    if index >> A1 & 1 == 1 {
        out ^= 1 << A2;
    }
    if index >> B1 & 1 == 1 {
        out ^= 1 << B2;
    }
    out
}

/// Hadamard on each of `qubits` qubits.
fn hadamard_layer(qubits: u32) -> CMatrix {
    let h = CMatrix::from_row_slice(
        2,
        2,
        &[
            C64::new(FRAC_1_SQRT_2, 0.0),
            C64::new(FRAC_1_SQRT_2, 0.0),
            C64::new(FRAC_1_SQRT_2, 0.0),
            C64::new(-FRAC_1_SQRT_2, 0.0),
        ],
    );
    (1..qubits).fold(h.clone(), |acc, _| acc.kronecker(&h))
}

/// Runs one parity-check purification block on pairs `a` (source) and `b`
/// (sacrificed target).
///
/// Builds the 16x16 state of both pairs, applies a Hadamard to every qubit
/// (which swaps phi- and psi+, so phase errors become bit flips), applies the
/// bilateral CNOT, measures A2 and B2 in the computational basis and keeps
/// the run when the outcomes agree. The surviving pair is rotated back with
/// the same local Hadamards. Returns the coincidence probability and the
/// normalized state of pair `a`. No twirl is applied to the output.
pub fn parity_check_block(a: &BellDiagonal, b: &BellDiagonal) -> Result<BlockOutcome> {
    let joint = a.to_density().tensor(&b.to_density())?;
    let n = joint.dim();
    let cnot = CMatrix::from_fn(n, n, |row, col| {
        if bilateral_cnot(col) == row {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let after = joint.conjugate(&(cnot * hadamard_layer(4)))?;
    let m = after.matrix();

    // Coincident outcomes (A2, B2) in {00, 11}; the surviving pair's index
    // is the top two bits.
    let coincident = [0b00usize, 0b11];
    let mut surviving = CMatrix::zeros(4, 4);
    for row in 0..4 {
        for col in 0..4 {
            surviving[(row, col)] = coincident.iter().map(|&o| m[((row << 2) | o, (col << 2) | o)]).sum();
        }
    }
    let success_probability = surviving.trace().re;
    if success_probability < NULL_EVENT {
        return Err(Error::NullEvent(success_probability));
    }
    let state = DensityMatrix::new(surviving / C64::new(success_probability, 0.0))?.conjugate(&hadamard_layer(2))?;
    let output = BellDiagonal::project(&state)?;
    Ok(BlockOutcome {
        success_probability,
        output,
        state,
    })
}
