//! Surjectivity detection for ring maps along two independent routes: the
//! linear rank, and the behaviour of the target's simple modules when
//! restricted along the map.

use crate::algebra::RingHom;
use crate::error::{Error, Result};
use crate::modrep::{is_absolutely_simple, restrict_along, simple_modules};

use super::epi::check_ring_epi;

/// Verdict of the surjectivity test.
///
/// The rank route is authoritative: `is_surjective` holds exactly when the
/// matrix rank fills the target. The simple-module route is recomputed as a
/// cross-check whenever the target's simple modules are enumerable, and the
/// two must agree under the hypotheses noted on each field.
#[derive(Debug, Clone)]
pub struct SurjectivityReport {
    pub rank: usize,
    pub target_dim: usize,
    pub is_surjective: bool,
    pub is_ring_epi: bool,
    /// Whether the target modulo its radical is a product of copies of the
    /// ground field (`None` when undecidable without a recorded idempotent
    /// decomposition).
    pub target_basic_split: Option<bool>,
    /// Whether every simple target module is absolutely simple over the
    /// target itself; under this hypothesis the two routes must agree
    /// bidirectionally.
    pub target_split: Option<bool>,
    /// For each simple target module: is its restriction along the map
    /// absolutely simple over the source?
    pub restricted_absolutely_simple: Option<Vec<bool>>,
    /// The simple-module route's prediction: ring epimorphism together with
    /// every restriction staying absolutely simple.
    pub simples_predict_surjective: Option<bool>,
    /// Whether the cross-check route ran to completion.
    pub complete: bool,
}

/// Decides surjectivity by rank, cross-checked against the behaviour of the
/// target's simple modules under restriction.
///
/// Two theorem-backed consistency guards are enforced as hard errors:
/// the simple-module prediction may never exceed the rank verdict, and a
/// ring epimorphism onto a basic split target must be surjective.
pub fn check_surjectivity(f: &RingHom) -> Result<SurjectivityReport> {
    let rank = f.rank();
    let target_dim = f.target().dim();
    let is_surjective = rank == target_dim;
    let is_ring_epi = check_ring_epi(f)?.is_epi;
    let target_basic_split = f.target().is_basic_split().ok();

    let mut target_split = None;
    let mut restricted_absolutely_simple = None;
    let mut simples_predict_surjective = None;
    let mut complete = false;
    if let Ok(simples) = simple_modules(f.target()) {
        let mut split = true;
        let mut flags = Vec::with_capacity(simples.len());
        for s in &simples {
            if !is_absolutely_simple(s)? {
                split = false;
            }
            flags.push(is_absolutely_simple(&restrict_along(f, s)?)?);
        }
        let predicts = is_ring_epi && flags.iter().all(|&v| v);
        if predicts && !is_surjective {
            return Err(Error::InternalConsistency(
                "every simple target module restricts to an absolutely simple module \
                 along a ring epimorphism, yet the rank does not fill the target"
                    .into(),
            ));
        }
        if split && is_surjective && !predicts {
            return Err(Error::InternalConsistency(
                "a surjective map onto a target with absolutely simple simples must \
                 restrict them to absolutely simple modules"
                    .into(),
            ));
        }
        target_split = Some(split);
        restricted_absolutely_simple = Some(flags);
        simples_predict_surjective = Some(predicts);
        complete = true;
    }
    if target_basic_split == Some(true) && is_ring_epi && !is_surjective {
        return Err(Error::InternalConsistency(
            "a ring epimorphism onto a basic split target must be surjective".into(),
        ));
    }
    Ok(SurjectivityReport {
        rank,
        target_dim,
        is_surjective,
        is_ring_epi,
        target_basic_split,
        target_split,
        restricted_absolutely_simple,
        simples_predict_surjective,
        complete,
    })
}
