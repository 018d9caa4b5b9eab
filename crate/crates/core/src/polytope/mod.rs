//! Support functions, exact realization of the polytope, its verification,
//! symbolic certificates and exports.

pub mod certificate;
pub mod export;
pub mod realize;
pub mod support;
pub mod verify;

pub use certificate::{certificate_check, CertificateReport, CertificateRow};
pub use export::{export, Format};
pub use realize::{facets, realize, vertex, Facet, PolytopeRealization};
pub use support::{build_support_function, rho_support, SupportFunction, SupportMode};
pub use verify::{verify_minimality, verify_realization};
