//! Reference calibration for a 3-lane urban arterial, shipped as
//! `configs/legerova.fis` and `configs/legerova.los`.

use crate::dsl::{parse_fis, DslError};
use crate::fis::SugenoFis;
use crate::los::{parse_regions, LosRegionModel};

pub const LEGEROVA_FIS: &str = include_str!("../configs/legerova.fis");
pub const LEGEROVA_LOS: &str = include_str!("../configs/legerova.los");

pub fn default_fis() -> Result<SugenoFis, DslError> {
    parse_fis(LEGEROVA_FIS)
}

pub fn default_regions() -> Result<LosRegionModel, DslError> {
    parse_regions(LEGEROVA_LOS)
}
