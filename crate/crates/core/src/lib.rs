pub mod config;
pub mod frontend;
pub mod interp;
pub mod midi;
pub mod music;
pub mod pipeline;
pub mod trace;
