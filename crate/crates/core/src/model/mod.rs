//! Pretrained-model and hardware-configuration data model.
//!
//! Loading is deterministic and side-effect free; the resulting objects are
//! immutable and safe to share across threads.

mod dataset;
mod hw;
mod io;

pub use dataset::{load_dataset, save_dataset, Dataset};
pub use hw::{
    default_cost_table, load_config, parse_config, save_config, BufferSizes, Component,
    CostEntry, CycleCosts, HardwareConfig, WeightEncoding,
};
pub use io::{load_model, save_model, MODEL_DESC_NAME};

use crate::error::{Error, Result};
use crate::fixed::Fixed;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LayerKind {
    Conv,
    Linear,
    AvgPool,
}

impl LayerKind {
    pub fn is_mapped(&self) -> bool {
        matches!(self, LayerKind::Conv | LayerKind::Linear)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Activation {
    Lif,
    If,
    None,
}

/// One layer of the network, as declared in the bundle descriptor.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerSpec {
    pub kind: LayerKind,
    pub in_channels: usize,
    pub out_channels: usize,
    /// Kernel side length; 1 for linear, pooling window for avgpool.
    pub kernel: usize,
    pub stride: usize,
    pub padding: usize,
    /// Spatial side length of the input feature map (1 for linear).
    pub input_dim: usize,
    pub threshold: Fixed,
    pub leak: Fixed,
    pub activation: Activation,
}

impl LayerSpec {
    /// Output spatial side length (floor conv arithmetic).
    pub fn output_dim(&self) -> usize {
        match self.kind {
            LayerKind::Linear => 1,
            LayerKind::Conv => {
                (self.input_dim + 2 * self.padding - self.kernel) / self.stride + 1
            }
            LayerKind::AvgPool => self.input_dim / self.kernel,
        }
    }

    /// Number of output activations (neurons) of this layer.
    pub fn activations(&self) -> usize {
        self.out_channels * self.output_dim() * self.output_dim()
    }

    /// Weight tensor element count expected for this layer.
    pub fn weight_len(&self) -> usize {
        match self.kind {
            LayerKind::AvgPool => 0,
            _ => self.out_channels * self.in_channels * self.kernel * self.kernel,
        }
    }

    fn validate(&self, layer: usize, mem_bits: u8) -> Result<()> {
        let err = |msg: String| Error::InvalidLayer { layer, msg };
        if self.in_channels == 0 || self.out_channels == 0 || self.kernel == 0 {
            return Err(err("channel and kernel counts must be >= 1".into()));
        }
        if self.stride == 0 {
            return Err(err("stride must be >= 1".into()));
        }
        if self.input_dim == 0 {
            return Err(err("input_dim must be >= 1".into()));
        }
        match self.kind {
            LayerKind::Conv => {
                if self.input_dim + 2 * self.padding < self.kernel {
                    return Err(err(format!(
                        "kernel {} does not fit padded input {}",
                        self.kernel,
                        self.input_dim + 2 * self.padding
                    )));
                }
            }
            LayerKind::Linear => {
                if self.kernel != 1 || self.input_dim != 1 || self.padding != 0 {
                    return Err(err("linear layers require kernel=1, input_dim=1, padding=0".into()));
                }
            }
            LayerKind::AvgPool => {
                if self.in_channels != self.out_channels {
                    return Err(err("avgpool cannot change channel count".into()));
                }
                if self.input_dim % self.kernel != 0 {
                    return Err(err(format!(
                        "input_dim {} not divisible by pooling window {}",
                        self.input_dim, self.kernel
                    )));
                }
                if self.activation != Activation::None {
                    return Err(err("avgpool takes no activation".into()));
                }
            }
        }
        if self.output_dim() == 0 {
            return Err(err("output spatial dimension must be >= 1".into()));
        }
        let one = 1i64 << mem_bits;
        match self.activation {
            Activation::If => {
                if self.leak.raw() != one {
                    return Err(err("IF activation requires leak = 1".into()));
                }
            }
            Activation::Lif => {
                if self.leak.raw() <= 0 || self.leak.raw() > one {
                    return Err(err("LIF leak must lie in (0, 1]".into()));
                }
            }
            Activation::None => {}
        }
        Ok(())
    }
}

/// Signed k-bit weights stored one byte per value, row-major over
/// (out_channel, in_channel, kernel_row, kernel_col).
#[derive(Debug, Clone, PartialEq)]
pub struct WeightTensor {
    pub out_channels: usize,
    pub in_channels: usize,
    pub kernel: usize,
    pub data: Vec<i8>,
}

impl WeightTensor {
    pub fn get(&self, n: usize, m: usize, kr: usize, kc: usize) -> i8 {
        let d = self.kernel;
        self.data[((n * self.in_channels + m) * d + kr) * d + kc]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputEncoding {
    /// The input tensor is presented unchanged at every time-step.
    Direct,
}

/// A validated pretrained SNN: topology plus quantized weights.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelBundle {
    pub layers: Vec<LayerSpec>,
    /// Per-layer weights; `None` for pooling layers.
    pub weights: Vec<Option<WeightTensor>>,
    /// Weight bit width k (signed two's-complement range).
    pub weight_bits: u8,
    /// Membrane-potential bit width k_mem.
    pub mem_bits: u8,
    /// Time-step count T.
    pub time_steps: u32,
    pub input_encoding: InputEncoding,
}

impl ModelBundle {
    /// Signed range limits for k-bit weights.
    pub fn weight_range(&self) -> (i64, i64) {
        let k = self.weight_bits as u32;
        (-(1i64 << (k - 1)), (1i64 << (k - 1)) - 1)
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=8).contains(&self.weight_bits) {
            return Err(Error::InvalidConfig {
                msg: format!("weight_bits must be in 1..=8, got {}", self.weight_bits),
            });
        }
        if !(1..=16).contains(&self.mem_bits) {
            return Err(Error::InvalidConfig {
                msg: format!("mem_bits must be in 1..=16, got {}", self.mem_bits),
            });
        }
        if self.time_steps == 0 {
            return Err(Error::InvalidConfig {
                msg: "time_steps must be >= 1".into(),
            });
        }
        if self.layers.is_empty() {
            return Err(Error::InvalidConfig {
                msg: "model has no layers".into(),
            });
        }
        if self.layers.len() != self.weights.len() {
            return Err(Error::InvalidConfig {
                msg: "weights list length does not match layer list".into(),
            });
        }
        let (lo, hi) = self.weight_range();
        for (i, layer) in self.layers.iter().enumerate() {
            layer.validate(i, self.mem_bits)?;
            match (layer.kind, &self.weights[i]) {
                (LayerKind::AvgPool, Some(_)) => {
                    return Err(Error::InvalidLayer {
                        layer: i,
                        msg: "avgpool layers carry no weights".into(),
                    })
                }
                (LayerKind::AvgPool, None) => {}
                (_, None) => {
                    return Err(Error::InvalidLayer {
                        layer: i,
                        msg: "conv/linear layer is missing its weight tensor".into(),
                    })
                }
                (_, Some(w)) => {
                    if w.out_channels != layer.out_channels
                        || w.in_channels != layer.in_channels
                        || w.kernel != layer.kernel
                        || w.data.len() != layer.weight_len()
                    {
                        return Err(Error::ShapeMismatch {
                            layer: i,
                            msg: format!(
                                "expected {}x{}x{}x{} weights, file holds {} values",
                                layer.out_channels,
                                layer.in_channels,
                                layer.kernel,
                                layer.kernel,
                                w.data.len()
                            ),
                        });
                    }
                    if w.data.iter().any(|&v| (v as i64) < lo || (v as i64) > hi) {
                        return Err(Error::WeightOutOfRange { layer: i });
                    }
                }
            }
        }
        self.validate_chain()?;
        // The final layer is the classifier readout; it must be mapped.
        if !self.layers.last().unwrap().kind.is_mapped() {
            return Err(Error::InvalidLayer {
                layer: self.layers.len() - 1,
                msg: "last layer must be conv or linear".into(),
            });
        }
        Ok(())
    }

    /// Check that each layer's input shape matches the previous output.
    fn validate_chain(&self) -> Result<()> {
        let mut channels = self.layers[0].in_channels;
        let mut dim = self.layers[0].input_dim;
        for (i, layer) in self.layers.iter().enumerate() {
            match layer.kind {
                LayerKind::Linear => {
                    // Linear consumes the flattened feature map.
                    if layer.in_channels != channels * dim * dim {
                        return Err(Error::ShapeMismatch {
                            layer: i,
                            msg: format!(
                                "linear expects {} inputs, previous layer provides {}x{}x{}",
                                layer.in_channels, channels, dim, dim
                            ),
                        });
                    }
                }
                _ => {
                    if layer.in_channels != channels || layer.input_dim != dim {
                        return Err(Error::ShapeMismatch {
                            layer: i,
                            msg: format!(
                                "layer expects {}ch @ {}, previous layer provides {}ch @ {}",
                                layer.in_channels, layer.input_dim, channels, dim
                            ),
                        });
                    }
                }
            }
            channels = layer.out_channels;
            dim = layer.output_dim();
        }
        Ok(())
    }
}
