//! The `.spbw` presentation language and the `spbw` command driver.
//!
//! A file declares the coefficient ring, the variables and a monomial order,
//! then the commutation data, named definitions and a command block:
//!
//! ```text
//! coeff QQ[x1, x2]
//! vars D1, D2
//! order deglex D1 > D2
//!
//! relation D2*D1 = 2*D1*D2 + x2*D1 - x1*D2
//!
//! let f = D1^2 + x1
//! gb f
//! ```
//!
//! Matrix literals list the columns of `F`: `[[a, b], [c, d]]` is the matrix
//! with first column `(a, b)ᵀ`, which is the same as writing the rows of `Fᵀ`.

pub mod ast;
pub mod error;
pub mod eval;
pub mod parser;
pub mod render;
pub mod run;

pub use ast::File;
pub use error::{Class, CliError};
pub use eval::Overrides;
pub use parser::{parse, parse_command, parse_order};
pub use render::render_file;
pub use run::{run_source, Flags, Outcome, REPORT_HEADER};
