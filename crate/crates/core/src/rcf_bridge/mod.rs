//! Regular and even-integer continued fractions, and how they relate to the
//! odd-odd expansion.

mod convert;
mod eicf;
mod rcf;
mod verify;

pub use convert::{rcf_to_oocf, Poll, RcfToOocf};
pub use eicf::{
    conjugacy_f, eicf_convergents, eicf_expand, phi, verify_conjugacy, ConjugacyReport,
    EicfDigit, EicfExpansion,
};
pub use rcf::{
    change_rcf, continuants, intermediate_convergents, locate_intermediate, rcf_convergents,
    rcf_expand, RcfExpansion,
};
pub use verify::{
    eicf_best_to_oocf, rcf_expand_past, verify_intermediate, EicfBestReport, IntermediateReport,
};
