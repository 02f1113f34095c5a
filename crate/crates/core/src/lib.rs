//! Exact invariants for Legendrian fronts, Brieskorn spheres, Milnor fibers
//! and Stein handlebodies, together with the embedding criteria built on
//! them.
//!
//! All arithmetic is exact: integers throughout, with big rationals inside
//! the linear algebra.

pub mod brieskorn;
pub mod criteria;
pub mod front;
pub mod handlebody;
pub mod linalg;

pub use brieskorn::{
    BrieskornError, BrieskornTriple, MilnorInvariants, OrientedBrieskorn, SeifertData, Sign,
    SurgeryDescription,
};
pub use criteria::CriteriaError;
pub use front::{
    FrontDiagram, FrontError, FrontEvent, LegendrianInvariants, StabilizationSchedule,
    TorusKnotParams, ZigZag,
};
pub use handlebody::{FormAnalysis, HandlebodyError, NucleusData, SteinKirbyData, TwoHandle};
pub use linalg::Rational;
