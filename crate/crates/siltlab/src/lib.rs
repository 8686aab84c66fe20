//! siltlab: exact-category structure on modules over representation-finite
//! path algebras over small prime fields — Ext computations, cotorsion-pair
//! and silting-subcategory enumeration, and exhaustive verification of the
//! correspondences between them.

pub mod algebra;
pub mod context;
pub mod cotorsion;
pub mod error;
pub mod homology;
pub mod lemmas;
pub mod linalg;
pub mod modrep;
pub mod report;
pub mod silting;
pub mod specfile;
pub mod subcat;

pub use error::{Error, Result};
