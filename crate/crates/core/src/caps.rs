//! Resource caps for the exhaustive and randomized procedures.

use crate::error::{Error, Result};

/// All configurable limits in one place. Every cap-guarded operation takes a
/// `&Caps` so callers can widen or narrow the desk-scale defaults.
#[derive(Clone, Debug)]
pub struct Caps {
    /// Largest order converted to a full multiplication table.
    pub table: u64,
    /// Largest order for full subgroup-lattice enumeration.
    pub subgroup_enum: u64,
    /// Largest order for brute-force automorphism counting.
    pub automorphisms: u64,
    /// Largest coset-space index for quotient actions.
    pub coset_index: u64,
    /// Largest order for full element enumeration.
    pub element_scan: u64,
    /// Largest order for exhaustive conjugacy-class partitioning.
    pub class_reps: u64,
    /// Largest order for the exhaustive simplicity test inside recognition.
    pub recognition: u64,
    /// Largest order for deterministic Sylow growth by element scan.
    pub exact_sylow: u64,
    /// Random samples allowed per Sylow growth step.
    pub sylow_budget: u32,
    /// Consecutive fruitless Sylow samples before giving up early.
    pub sylow_stagnation: u32,
    /// Random samples for sampled structure searches (radical, Fitting, ...).
    pub sample_budget: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            table: 512,
            subgroup_enum: 256,
            automorphisms: 360,
            coset_index: 100_000,
            element_scan: 100_000,
            class_reps: 10_000,
            recognition: 250_000,
            exact_sylow: 10_000,
            sylow_budget: 2_000,
            sylow_stagnation: 300,
            sample_budget: 64,
        }
    }
}

impl Caps {
    /// Sets a cap by name, for CLI and manifest overrides.
    pub fn set(&mut self, name: &str, value: u64) -> Result<()> {
        match name {
            "table" => self.table = value,
            "subgroup_enum" => self.subgroup_enum = value,
            "automorphisms" => self.automorphisms = value,
            "coset_index" => self.coset_index = value,
            "element_scan" => self.element_scan = value,
            "class_reps" => self.class_reps = value,
            "recognition" => self.recognition = value,
            "exact_sylow" => self.exact_sylow = value,
            "sylow_budget" => {
                self.sylow_budget = u32::try_from(value).map_err(|_| Error::InvalidFamily {
                    message: "sylow_budget out of range".into(),
                })?;
            }
            "sylow_stagnation" => {
                self.sylow_stagnation = u32::try_from(value).map_err(|_| Error::InvalidFamily {
                    message: "sylow_stagnation out of range".into(),
                })?;
            }
            "sample_budget" => {
                self.sample_budget = u32::try_from(value).map_err(|_| Error::InvalidFamily {
                    message: "sample_budget out of range".into(),
                })?;
            }
            _ => {
                return Err(Error::InvalidFamily {
                    message: format!("unknown cap {name:?}"),
                })
            }
        }
        Ok(())
    }
}
