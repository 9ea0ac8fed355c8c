use serde::{Deserialize, Serialize};

use super::{decide, DecideOptions};
use crate::arrangement::{same_type, Arrangement};
use crate::error::Result;
use crate::freeness::Status;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TeraoComparison {
    pub same_type: bool,
    pub freeness_a: Status,
    pub freeness_b: Status,
    /// Different types, or same type with the same verdict. A pair of the
    /// same type with different verdicts would contradict Terao's conjecture.
    pub conforming: bool,
}

pub fn terao_compare(a: &Arrangement, b: &Arrangement, opts: &DecideOptions) -> Result<TeraoComparison> {
    terao_compare_with(a, b, |x| Ok(decide(x, opts)?.status))
}

/// Same as [`terao_compare`] with a caller-supplied decision procedure.
pub fn terao_compare_with<F>(a: &Arrangement, b: &Arrangement, mut decider: F) -> Result<TeraoComparison>
where
    F: FnMut(&Arrangement) -> Result<Status>,
{
    let same = same_type(a, b);
    let fa = decider(a)?;
    let fb = decider(b)?;
    Ok(TeraoComparison {
        same_type: same,
        freeness_a: fa,
        freeness_b: fb,
        conforming: !same || fa == fb,
    })
}
