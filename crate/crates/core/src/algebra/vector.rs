use crate::error::{Error, Result};

use super::DUMMY;

/// Per-method probability that a method of one interface can handle the
/// argument it receives. Slot 0 is the dummy and is always 0.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodAvailabilityVector(Vec<f64>);

impl MethodAvailabilityVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyVector);
        }
        for (index, &value) in entries.iter().enumerate() {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::AvailabilityOutOfRange { index, value });
            }
        }
        if entries[DUMMY] != 0.0 {
            return Err(Error::DummyAvailable);
        }
        Ok(Self(entries))
    }

    /// Operators build results directly; their invariants follow from the
    /// inputs rather than being re-checked.
    pub(crate) fn from_raw(entries: Vec<f64>) -> Self {
        Self(entries)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, index: usize) -> f64 {
        self.0[index]
    }

    pub fn entries(&self) -> &[f64] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<f64> {
        self.0
    }
}

/// Availability of a fully functional service with `n` slots (dummy
/// included): every real method is available, the dummy is not.
pub fn full_availability(n: usize) -> MethodAvailabilityVector {
    assert!(n >= 1, "availability vector needs the dummy slot");
    let mut entries = vec![1.0; n];
    entries[DUMMY] = 0.0;
    MethodAvailabilityVector(entries)
}

/// Boolean availability used by the discrete model.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiscreteAvailabilityVector(Vec<bool>);

impl DiscreteAvailabilityVector {
    pub fn new(entries: Vec<bool>) -> Result<Self> {
        match entries.first() {
            None => Err(Error::EmptyVector),
            Some(true) => Err(Error::DummyAvailable),
            Some(false) => Ok(Self(entries)),
        }
    }

    pub(crate) fn from_raw(entries: Vec<bool>) -> Self {
        Self(entries)
    }

    /// Every real method available.
    pub fn full(n: usize) -> Self {
        assert!(n >= 1, "availability vector needs the dummy slot");
        let mut entries = vec![true; n];
        entries[DUMMY] = false;
        Self(entries)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, index: usize) -> bool {
        self.0[index]
    }

    pub fn entries(&self) -> &[bool] {
        &self.0
    }

    /// Number of available real methods.
    pub fn count_available(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    /// Embeds the vector into the probabilistic model: true becomes 1, false 0.
    pub fn to_probabilistic(&self) -> MethodAvailabilityVector {
        MethodAvailabilityVector(self.0.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect())
    }
}
