//! Binary sequences, their periodic autocorrelation, cyclic difference sets,
//! and the correspondence between two-level sequences and difference sets.

mod cds;
mod params;
mod sequence;

pub use cds::{
    cds_to_sequence, sequence_to_cds, support_to_sequence, verify_cds, CdsViolation,
    CyclicDifferenceSet, NotADifferenceSet,
};
pub use params::{feasibility, params_from_nd, CdsParams, Infeasible, ParamError};
pub use sequence::{autocorrelation, AutocorrelationProfile, BinarySequence, SeqError};
