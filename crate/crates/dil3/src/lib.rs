//! Files, pictures and the command-line pipeline around [`dil3_core`].

pub mod certfile;
pub mod data;
pub mod driver;
pub mod format;
pub mod pipeline;
pub mod render;
