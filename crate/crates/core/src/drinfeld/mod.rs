//! The modular polynomial of level `T`: construction from its closed form,
//! coefficient extraction, exact verification, specialisation oracles and
//! export.

mod export;
mod oracle;
mod phi;
mod verify;

pub use export::{export_phi, from_json, to_cas, to_json, to_text, Format};
pub use oracle::{
    default_extension_degree, oracle_interpolate, oracle_resultant_points, InterpolationVerdict,
    ResultantTrial, ResultantVerdict,
};
pub use phi::{coeff_pm, expand_phi, j0, pm_closed_form, ModularPoly};
pub use verify::{
    verify_boundary, verify_proof_intermediates, verify_ratio, verify_substitution, BoundaryReport,
    IntermediatesReport, RatioReport, SubstitutionReport,
};
