use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::MAX_QUBITS;

/// A register of spin-1/2 particles with the crate-wide bit convention:
/// qubit `k` lives on bit `k` counted from the most significant bit of the
/// basis index, `0` meaning spin-up and `1` spin-down.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QubitRegister {
    n_qubits: usize,
}

impl QubitRegister {
    pub fn new(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::EmptyRegister);
        }
        if n_qubits > MAX_QUBITS {
            return Err(Error::RegisterTooLarge {
                n_qubits,
                max: MAX_QUBITS,
            });
        }
        Ok(Self { n_qubits })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Hilbert-space dimension, `2^n`.
    pub fn dimension(&self) -> usize {
        1 << self.n_qubits
    }

    /// Single-bit mask selecting qubit `site` inside a basis index.
    pub fn mask(&self, site: usize) -> usize {
        debug_assert!(site < self.n_qubits);
        1 << (self.n_qubits - 1 - site)
    }

    /// State of qubit `site` in basis index `index`: 0 = up, 1 = down.
    pub fn bit(&self, index: usize, site: usize) -> u8 {
        ((index >> (self.n_qubits - 1 - site)) & 1) as u8
    }

    pub fn check_site(&self, site: usize) -> Result<()> {
        if site >= self.n_qubits {
            return Err(Error::SiteOutOfRange {
                site,
                n_qubits: self.n_qubits,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_is_power_of_two() {
        for n in 1..=MAX_QUBITS {
            let reg = QubitRegister::new(n).unwrap();
            assert_eq!(reg.dimension(), 2usize.pow(n as u32));
        }
    }

    #[test]
    fn rejects_empty_and_oversized() {
        assert!(matches!(QubitRegister::new(0), Err(Error::EmptyRegister)));
        assert!(matches!(
            QubitRegister::new(MAX_QUBITS + 1),
            Err(Error::RegisterTooLarge { .. })
        ));
    }

    #[test]
    fn bit_convention_is_msb_first() {
        let reg = QubitRegister::new(3).unwrap();
        // index 0b100 = 4: qubit 0 down, qubits 1 and 2 up
        assert_eq!(reg.bit(4, 0), 1);
        assert_eq!(reg.bit(4, 1), 0);
        assert_eq!(reg.bit(4, 2), 0);
        assert_eq!(reg.mask(0), 4);
        assert_eq!(reg.mask(2), 1);
    }
}
