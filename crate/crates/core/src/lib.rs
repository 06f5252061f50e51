//! The N-qubit CHSH inequality on the GHZ state.
//!
//! * [`qops`]: a dense state-vector and density-matrix simulator up to
//!   [`qops::MAX_QUBITS`] qubits, with a Hermitian eigensolver.
//! * [`bell`]: measurement configurations, the Bell function in closed form and
//!   as an operator, and its reduction to a two-qubit CHSH setting.
//! * [`games`]: the CHSH and CHSH* games, exactly and by seeded sampling.
//! * [`degeneracy`]: configurations reaching `2√2`, their degenerate
//!   eigenspaces, and the local unitary families acting on them.
//!
//! ```
//! use ghz_chsh::bell::{closed_form_value, reduce_to_two_qubit};
//! use ghz_chsh::degeneracy::{reference_config_n4, TSIRELSON};
//!
//! let cfg = reference_config_n4();
//! assert!((closed_form_value(&cfg) - TSIRELSON).abs() < 1e-12);
//! assert!((reduce_to_two_qubit(&cfg)?.i_2 - TSIRELSON).abs() < 1e-12);
//! # Ok::<(), ghz_chsh::Error>(())
//! ```

pub mod bell;
pub mod degeneracy;
mod error;
pub mod games;
pub mod qops;

pub use bell::{BellConfig, BlochVector, MeasurementDirection};
pub use error::{Error, Result};
pub use qops::Complex;

// The guide's chapters, compiled so their snippets run as doctests.
#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/states.md")]
    pub mod states {}
    #[doc = include_str!("../../../book/src/bell-function.md")]
    pub mod bell_function {}
    #[doc = include_str!("../../../book/src/reduction.md")]
    pub mod reduction {}
    #[doc = include_str!("../../../book/src/games.md")]
    pub mod games {}
    #[doc = include_str!("../../../book/src/degeneracy.md")]
    pub mod degeneracy {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
