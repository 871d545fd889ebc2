//! Simulation core for spiking neural networks mapped onto tiled analog
//! crossbar in-memory-computing hardware.
//!
//! The crate is organized around the pipeline a run follows:
//!
//! 1. [`model`] — load the pretrained quantized SNN bundle and the hardware
//!    configuration.
//! 2. [`mapper`] — partition every conv/linear layer onto X×X crossbars,
//!    group crossbars into PEs and tiles, compute per-layer parallelization.
//! 3. [`nice`] — the non-ideality computation engine: weight encoding,
//!    conductance mapping with device variation, parasitic column solves,
//!    ADC quantization and signed-MAC recovery.
//! 4. [`snn`] — time-stepped functional inference with LIF/IF dynamics,
//!    in ideal (exact integer) or hardware-realistic mode.
//! 5. [`ela`] — energy/latency/area engine: pipelined schedule trace,
//!    analytic NoC model, component-level cost summation, EDP.
//!
//! [`gen`] produces synthetic desk-scale models and datasets, [`report`]
//! renders results as JSON/CSV.

pub mod ela;
pub mod error;
pub mod fixed;
pub mod gen;
pub mod mapper;
pub mod model;
pub mod nice;
pub mod report;
pub mod snn;

pub use error::{Error, Result};
pub use fixed::Fixed;
pub use mapper::{map_network, CrossbarSlice, MappedNetwork};
pub use model::{
    load_config, load_model, Activation, HardwareConfig, LayerKind, LayerSpec, ModelBundle,
};
