//! Machine-readable verdicts assembled by the certification routines.

use serde::Serialize;

/// One labelled dimension recorded while certifying, so every verdict can be
/// traced back to the numbers that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub label: String,
    pub value: usize,
}

/// Summary of which certification steps ran and what they concluded.
///
/// A `None` flag means the corresponding check was not attempted.
/// `complete` is `true` when every attempted check reached a definitive
/// verdict; it drops to `false` when a bounded computation (a resolution
/// cutoff, an unavailable simple-module enumeration) left a question open.
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub is_ring_epi: Option<bool>,
    /// Highest homological degree whose torsion space was checked.
    pub homological_epi_checked_to_degree: Option<usize>,
    pub is_homological_epi: Option<bool>,
    pub is_surjective: Option<bool>,
    pub kernel_idempotent: Option<bool>,
    pub kernel_stratifying: Option<bool>,
    /// Coordinates of the idempotent generating the kernel, when one is
    /// recorded, rendered per basis element.
    pub idempotent_generator: Option<Vec<String>>,
    pub complete: bool,
    pub witnesses: Vec<Witness>,
}

impl Certificate {
    pub fn new() -> Certificate {
        Certificate {
            is_ring_epi: None,
            homological_epi_checked_to_degree: None,
            is_homological_epi: None,
            is_surjective: None,
            kernel_idempotent: None,
            kernel_stratifying: None,
            idempotent_generator: None,
            complete: true,
            witnesses: Vec::new(),
        }
    }

    /// Records a labelled dimension.
    pub fn witness(&mut self, label: &str, value: usize) {
        self.witnesses.push(Witness {
            label: label.to_string(),
            value,
        });
    }

    /// Marks the certificate incomplete when `definitive` is false.
    pub fn absorb(&mut self, definitive: bool) {
        self.complete = self.complete && definitive;
    }
}

impl Default for Certificate {
    fn default() -> Self {
        Certificate::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn serializes_to_a_stable_shape() {
        let mut c = Certificate::new();
        c.is_ring_epi = Some(true);
        c.homological_epi_checked_to_degree = Some(2);
        c.is_homological_epi = Some(true);
        c.witness("kernel_dim", 3);
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(
            json,
            concat!(
                "{\"is_ring_epi\":true,",
                "\"homological_epi_checked_to_degree\":2,",
                "\"is_homological_epi\":true,",
                "\"is_surjective\":null,",
                "\"kernel_idempotent\":null,",
                "\"kernel_stratifying\":null,",
                "\"idempotent_generator\":null,",
                "\"complete\":true,",
                "\"witnesses\":[{\"label\":\"kernel_dim\",\"value\":3}]}",
            )
        );
    }
}
