use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::Result;
use crate::field::Field;

use super::hom::is_isomorphic;
use super::module::Module;
use super::structure::{injective_envelope, spectral_image, SpectralObject};

pub const DEFAULT_MAX_TERMS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ResolutionStatus {
    Complete,
    /// `Z^{preperiod + period}` is isomorphic to `Z^{preperiod}`.
    Periodic { period: usize, preperiod: usize },
    Truncated { bound: usize },
}

#[derive(Clone, Debug)]
pub struct InjResolution<F: Field> {
    /// `I^n` as spectral objects.
    pub terms: Vec<SpectralObject>,
    pub term_modules: Vec<Module<F>>,
    /// `Z^0 = M` and the successive cokernels `Z^{n+1} = coker(Z^n -> I^n)`.
    pub syzygies: Vec<Module<F>>,
    pub status: ResolutionStatus,
}

impl<F: Field> InjResolution<F> {
    /// The resolution has been determined in full: either it stops or
    /// repeats.
    pub fn is_complete(&self) -> bool {
        !matches!(self.status, ResolutionStatus::Truncated { .. })
    }

    /// Union of the supports of all terms.
    pub fn support_union(&self) -> BTreeSet<usize> {
        self.terms.iter().flat_map(|t| t.support()).collect()
    }
}

pub fn min_inj_resolution<F: Field>(m: &Module<F>, max_terms: usize, seed: u64) -> Result<InjResolution<F>> {
    let mut res = InjResolution {
        terms: Vec::new(),
        term_modules: Vec::new(),
        syzygies: vec![m.clone()],
        status: ResolutionStatus::Truncated { bound: max_terms },
    };
    if m.is_zero() {
        res.status = ResolutionStatus::Complete;
        return Ok(res);
    }
    for n in 0..max_terms.max(1) {
        let z = res.syzygies[n].clone();
        let env = injective_envelope(&z)?;
        res.terms.push(spectral_image(&env.module));
        res.term_modules.push(env.module.clone());
        let (next, _) = env.iota.cokernel()?;
        if next.is_zero() {
            res.status = ResolutionStatus::Complete;
            return Ok(res);
        }
        for k in 0..=n {
            if is_isomorphic(&next, &res.syzygies[k], seed)? {
                res.syzygies.push(next);
                res.status = ResolutionStatus::Periodic { period: n + 1 - k, preperiod: k };
                return Ok(res);
            }
        }
        res.syzygies.push(next);
    }
    Ok(res)
}
