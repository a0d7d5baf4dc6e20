//! Size limits for brute-force computations.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest ambient dimension for a brute-force kernel.
    pub bruteforce: usize,
    /// Largest number of weight tuples enumerated by a plethysm.
    pub plethysm: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            bruteforce: 20_000,
            plethysm: 5_000_000,
        }
    }
}

impl Caps {
    pub fn check_bruteforce(&self, what: &'static str, needed: usize) -> crate::Result<()> {
        if needed > self.bruteforce {
            return Err(crate::Error::CapExceeded {
                what,
                needed,
                cap: self.bruteforce,
            });
        }
        Ok(())
    }

    pub fn check_plethysm(&self, what: &'static str, needed: usize) -> crate::Result<()> {
        if needed > self.plethysm {
            return Err(crate::Error::CapExceeded {
                what,
                needed,
                cap: self.plethysm,
            });
        }
        Ok(())
    }
}
