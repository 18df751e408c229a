//! Exact computation for single-vertex higher-rank graphs and their algebras.
//!
//! The crate covers four layers:
//!
//! * graphs: validation, normal forms, minimal common extensions, alignment,
//!   periodicity witnesses and isomorphism-canonical forms;
//! * [`algebra`]: exact symbolic calculus on the span of the `s_u s_v*`;
//! * [`averaging`]: the endomorphisms `γ_p`, averaging operators and the
//!   Dixmier averaging pipeline with replayable schedules;
//! * [`lattice`] and [`census`]: the intrinsic group, spectrum and type
//!   classification, and exhaustive small-graph censuses.

pub mod algebra;
pub mod alignment;
pub mod averaging;
pub mod census;
pub mod degree;
pub mod error;
pub mod graph;
pub mod io;
pub mod iso;
pub mod lattice;
pub mod periodicity;
pub mod rational;
pub mod sample;
pub mod word;

pub use algebra::{Algebra, Component, Element, KmsOutcome, NormBounds, Term, DEFAULT_MAX_TERMS};
pub use alignment::{AlignmentReport, MinimalExtensionSet, PullbackReport};
pub use averaging::{AveragingSchedule, CuntzTuple, DixmierOutcome, ReplayReport, Step};
pub use census::{Census, CensusRow};
pub use degree::{Degree, ZDegree};
pub use error::{Error, Result};
pub use graph::{validate_kgraph, CubicViolation, Edge, KGraph, ThetaFamily};
pub use iso::canonical_iso_form;
pub use lattice::{
    classify_type, intrinsic_group, spectrum_generator, Aperiodicity, IntrinsicGroup, Spectrum,
    TypeReport, Verdict,
};
pub use periodicity::{Periodicity, PeriodicityWitness, DEFAULT_PERIODICITY_BOUND};
pub use rational::Coeff;
pub use word::NormalWord;
