use std::fmt;

use crate::error::{Error, Result};

use super::{ConversionProbabilityMatrix, MethodDependencyMatrix, DUMMY};

/// Loss behaviour of one adapter: which source methods each target method
/// needs, and how likely each of those conversions is to succeed.
///
/// Conversion cells outside the dependency support are never read. Equality
/// compares the dependency matrices and the conversion cells on the support.
#[derive(Debug, Clone)]
pub struct ProbabilisticAdaptationFactor {
    dep: MethodDependencyMatrix,
    conv: ConversionProbabilityMatrix,
}

impl ProbabilisticAdaptationFactor {
    /// Pairs the two matrices. Only shape agreement is enforced here; use
    /// [`validate_factor`] for the dummy and range rules.
    pub fn new(dep: MethodDependencyMatrix, conv: ConversionProbabilityMatrix) -> Result<Self> {
        if dep.rows() != conv.rows() {
            return Err(Error::ShapeMismatch {
                op: "factor rows",
                expected: dep.rows(),
                found: conv.rows(),
            });
        }
        if dep.cols() != conv.cols() {
            return Err(Error::ShapeMismatch {
                op: "factor columns",
                expected: dep.cols(),
                found: conv.cols(),
            });
        }
        Ok(Self { dep, conv })
    }

    pub(crate) fn from_parts(
        dep: MethodDependencyMatrix,
        conv: ConversionProbabilityMatrix,
    ) -> Self {
        debug_assert_eq!(dep.shape(), conv.shape());
        Self { dep, conv }
    }

    pub fn dep(&self) -> &MethodDependencyMatrix {
        &self.dep
    }

    pub fn conv(&self) -> &ConversionProbabilityMatrix {
        &self.conv
    }

    /// `(target slots, source slots)`, dummies included.
    pub fn shape(&self) -> (usize, usize) {
        self.dep.shape()
    }

    pub fn into_parts(self) -> (MethodDependencyMatrix, ConversionProbabilityMatrix) {
        (self.dep, self.conv)
    }
}

impl PartialEq for ProbabilisticAdaptationFactor {
    fn eq(&self, other: &Self) -> bool {
        if self.dep != other.dep {
            return false;
        }
        (0..self.dep.rows()).all(|j| {
            self.dep
                .support(j)
                .all(|i| self.conv.get(j, i) == other.conv.get(j, i))
        })
    }
}

/// Incremental construction of a factor row by row.
///
/// Starts with the dummy row in place and every real target method marked as
/// always implementable.
#[derive(Debug, Clone)]
pub struct FactorBuilder {
    dep: MethodDependencyMatrix,
    conv: ConversionProbabilityMatrix,
}

impl FactorBuilder {
    /// `target_slots` and `source_slots` include the dummy.
    pub fn new(target_slots: usize, source_slots: usize) -> Self {
        Self {
            dep: MethodDependencyMatrix::with_dummy(target_slots, source_slots),
            conv: ConversionProbabilityMatrix::zeros(target_slots, source_slots),
        }
    }

    /// Target method `target` depends on source method `source`, converting
    /// with probability `p`.
    pub fn depends(mut self, target: usize, source: usize, p: f64) -> Self {
        self.dep.set(target, source, true);
        self.conv.set(target, source, p);
        self
    }

    /// Target method `target` can never be implemented from the source.
    pub fn never(mut self, target: usize) -> Self {
        for i in 0..self.dep.cols() {
            self.dep.set(target, i, false);
            self.conv.set(target, i, 0.0);
        }
        self.dep.set(target, DUMMY, true);
        self
    }

    pub fn build(self) -> ProbabilisticAdaptationFactor {
        ProbabilisticAdaptationFactor::from_parts(self.dep, self.conv)
    }
}

/// Identity adapter over an interface with `n` slots (dummy included).
pub fn identity_factor(n: usize) -> ProbabilisticAdaptationFactor {
    let dep = MethodDependencyMatrix::identity(n);
    let mut conv = ConversionProbabilityMatrix::zeros(n, n);
    for k in 1..n {
        conv.set(k, k, 1.0);
    }
    ProbabilisticAdaptationFactor::from_parts(dep, conv)
}

/// A broken factor invariant. Indices are internal (dummy at 0).
#[derive(Debug, Clone, PartialEq)]
pub enum FactorViolation {
    ShapeDisagreement {
        dep: (usize, usize),
        conv: (usize, usize),
    },
    /// `dep[0][0]` is false.
    DummyRowMissing,
    /// `dep[0][col]` is true for a real source method.
    DummyRowDependency { col: usize },
    /// A conversion probability on the dependency support outside `[0, 1]`.
    ConversionOutOfRange { row: usize, col: usize, value: f64 },
    /// `conv[row][0]` is non-zero.
    DummyColumnNonZero { row: usize, value: f64 },
    /// `conv[0][col]` is non-zero.
    DummyRowNonZero { col: usize, value: f64 },
}

impl fmt::Display for FactorViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorViolation::ShapeDisagreement { dep, conv } => write!(
                f,
                "dependency matrix is {}x{} but conversion matrix is {}x{}",
                dep.0, dep.1, conv.0, conv.1
            ),
            FactorViolation::DummyRowMissing => {
                f.write_str("dummy target method must depend on the dummy source method")
            }
            FactorViolation::DummyRowDependency { col } => {
                write!(f, "dummy target method depends on source method {col}")
            }
            FactorViolation::ConversionOutOfRange { row, col, value } => write!(
                f,
                "conversion probability at ({row}, {col}) is {value}, outside [0, 1]"
            ),
            FactorViolation::DummyColumnNonZero { row, value } => write!(
                f,
                "conversion into the dummy source method at row {row} is {value}, must be 0"
            ),
            FactorViolation::DummyRowNonZero { col, value } => write!(
                f,
                "conversion from the dummy target method at column {col} is {value}, must be 0"
            ),
        }
    }
}

/// Every invariant broken by `f`; empty iff the factor is valid.
pub fn validate_factor(f: &ProbabilisticAdaptationFactor) -> Vec<FactorViolation> {
    validate_parts(&f.dep, &f.conv)
}

/// Like [`validate_factor`] but on loose matrices, so shape disagreement is
/// reportable too.
pub fn validate_parts(
    dep: &MethodDependencyMatrix,
    conv: &ConversionProbabilityMatrix,
) -> Vec<FactorViolation> {
    if dep.shape() != conv.shape() {
        return vec![FactorViolation::ShapeDisagreement {
            dep: dep.shape(),
            conv: conv.shape(),
        }];
    }
    let mut out = Vec::new();
    if !dep.get(DUMMY, DUMMY) {
        out.push(FactorViolation::DummyRowMissing);
    }
    out.extend(
        (1..dep.cols())
            .filter(|&i| dep.get(DUMMY, i))
            .map(|col| FactorViolation::DummyRowDependency { col }),
    );
    for j in 0..dep.rows() {
        for i in dep.support(j) {
            let value = conv.get(j, i);
            if !(0.0..=1.0).contains(&value) {
                out.push(FactorViolation::ConversionOutOfRange {
                    row: j,
                    col: i,
                    value,
                });
            }
        }
    }
    for j in 0..conv.rows() {
        let value = conv.get(j, DUMMY);
        if value != 0.0 {
            out.push(FactorViolation::DummyColumnNonZero { row: j, value });
        }
    }
    for i in 1..conv.cols() {
        let value = conv.get(DUMMY, i);
        if value != 0.0 {
            out.push(FactorViolation::DummyRowNonZero { col: i, value });
        }
    }
    out
}
