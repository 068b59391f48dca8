//! File formats, builtin spec strings and the `mtcq` command line for
//! qsys-core.

pub mod app;
pub mod format;
pub mod io;
pub mod spec;

pub use app::run;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] qsys_core::Error),
}

impl Error {
    /// 2 for bad input, 1 when the library refuses a computation.
    pub fn exit_code(&self) -> i32 {
        use qsys_core::Error as E;
        match self {
            Error::Usage(_) => 2,
            Error::Core(
                E::InvalidData(_)
                | E::ShapeMismatch(_)
                | E::UnsupportedLevel(_)
                | E::NotAProduct
                | E::CategoryMismatch
                | E::DegenerateForm
                | E::NonIntegralFusion(_),
            ) => 2,
            Error::Core(_) => 1,
        }
    }
}
