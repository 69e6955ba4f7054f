//! Separating invariants of finite groups acting linearly over finite fields.
//!
//! The crate covers finite field arithmetic, polynomials over `GF(q)`, group
//! actions with orbit enumeration, the orbit-indicator constructions of
//! minimal separating sets, the edge action of `S_n` on simple graphs and the
//! multisymmetric separating sets over `GF(2)`.

pub mod action;
pub mod error;
pub mod gf;
pub mod golden;
pub mod graphs;
pub mod linalg;
pub mod multisym;
pub mod mvpoly;
pub mod sepcore;

pub use action::{Group, GroupJson, Mat, OrbitDecomp, DEFAULT_ORDER_CAP, DEFAULT_POINT_CAP};
pub use error::{Error, Result};
pub use gf::{ArithOp, Fe, FieldSpec};
pub use multisym::{PointVm, SigmaSpec, TauVector};
pub use mvpoly::{Degrees, ExpVec, Poly, VarNaming};
pub use sepcore::{BetaSep, BuildOptions, Invariant, Method, SepCertificate};
