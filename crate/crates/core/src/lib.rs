//! Effective dimensions of path semigroups and truncated path semigroups of
//! finite quivers, with explicit effective representations and brute-force
//! verification.

pub mod dimension;
pub mod error;
pub mod oracle;
pub mod pathsem;
pub mod polyring;
pub mod quiver;
pub mod repbuild;
pub mod suite;

pub use dimension::{
    an_closed_form, analyze, classify_path, d_value, effdim_path, effdim_truncated, k_interval,
    k_profile, line_segments, stabilization, AnalysisReport, KProfile, PathClassification,
    Stabilization,
};
pub use error::{Error, Result};
pub use oracle::{
    exhaustive_lower_bound_f2, verify_filtration, verify_path_rep, verify_truncated, Status,
    VerifyReport,
};
pub use pathsem::{
    compose, enumerate_paths, factorize_cycle, first_return_cycles, CycleBasis, Path,
};
pub use polyring::{IntMatrix, Matrix, MultiPoly, PolyMatrix, Ring, Variable};
pub use quiver::{length_profile, parse_quiver, sccs, ExtLen, LengthProfile, Quiver, SccPartition};
pub use repbuild::{
    build_path_rep, build_truncated_rep, lemma3_entry, rep_of_path, AnyRep, GradedRep,
    Representation, RepresentationJson, SymbolicRep,
};
