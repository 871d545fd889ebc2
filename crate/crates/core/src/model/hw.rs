//! Hardware configuration: circuit, device, NoC and cost-table parameters.
//!
//! `hw.conf` is a TOML file; every key is optional and absent keys take the
//! shipped defaults below. The per-component cost table prices energy per
//! event and area per instance. The shipped cost numbers are illustrative
//! placeholders for a 65nm-class design and are meant to be calibrated by
//! the user; all trend-level results hold for any positive table.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

/// Every priced hardware component. The cost table is closed-world over
/// this list: a config that fails to price any of them is rejected at load
/// time, so the cost engine can never meet an unpriced component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Component {
    XbarArray,
    InputPeriph,
    Mux,
    Adc,
    ShiftAdd,
    Diff,
    PeAccum,
    PeBuffer,
    PeInputBuffer,
    TileAccum,
    TileBuffer,
    TileInputBuffer,
    GlobalBuffer,
    GlobalAccum,
    Pooling,
    NeuronAdder,
    NeuronSubtractor,
    NeuronComparator,
    VmemCache,
    NocRouter,
}

impl Component {
    pub const ALL: [Component; 20] = [
        Component::XbarArray,
        Component::InputPeriph,
        Component::Mux,
        Component::Adc,
        Component::ShiftAdd,
        Component::Diff,
        Component::PeAccum,
        Component::PeBuffer,
        Component::PeInputBuffer,
        Component::TileAccum,
        Component::TileBuffer,
        Component::TileInputBuffer,
        Component::GlobalBuffer,
        Component::GlobalAccum,
        Component::Pooling,
        Component::NeuronAdder,
        Component::NeuronSubtractor,
        Component::NeuronComparator,
        Component::VmemCache,
        Component::NocRouter,
    ];

    pub fn key(&self) -> &'static str {
        match self {
            Component::XbarArray => "xbar_array",
            Component::InputPeriph => "input_periph",
            Component::Mux => "mux",
            Component::Adc => "adc",
            Component::ShiftAdd => "shift_add",
            Component::Diff => "diff",
            Component::PeAccum => "pe_accum",
            Component::PeBuffer => "pe_buffer",
            Component::PeInputBuffer => "pe_input_buffer",
            Component::TileAccum => "tile_accum",
            Component::TileBuffer => "tile_buffer",
            Component::TileInputBuffer => "tile_input_buffer",
            Component::GlobalBuffer => "global_buffer",
            Component::GlobalAccum => "global_accum",
            Component::Pooling => "pooling",
            Component::NeuronAdder => "neuron_adder",
            Component::NeuronSubtractor => "neuron_subtractor",
            Component::NeuronComparator => "neuron_comparator",
            Component::VmemCache => "vmem_cache",
            Component::NocRouter => "noc_router",
        }
    }
}

/// Unit cost of one component: dynamic energy per event (J) and area per
/// instance (m²). For `vmem_cache` the area entry prices one byte.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostEntry {
    pub energy: f64,
    pub area: f64,
}

/// Illustrative 65nm-flavored cost table; calibrate before quoting absolute
/// joules or square millimeters.
pub fn default_cost_table() -> BTreeMap<String, CostEntry> {
    let mut t = BTreeMap::new();
    let mut put = |c: Component, energy: f64, area: f64| {
        t.insert(c.key().to_string(), CostEntry { energy, area });
    };
    put(Component::XbarArray, 2.0e-11, 1.0e-9);
    put(Component::InputPeriph, 5.0e-12, 3.0e-10);
    put(Component::Mux, 1.0e-13, 1.0e-11);
    put(Component::Adc, 2.0e-12, 3.0e-10);
    put(Component::ShiftAdd, 5.0e-13, 5.0e-11);
    put(Component::Diff, 8.0e-13, 8.0e-11);
    put(Component::PeAccum, 1.0e-12, 2.0e-10);
    put(Component::PeBuffer, 8.0e-13, 4.0e-10);
    put(Component::PeInputBuffer, 8.0e-13, 6.0e-10);
    put(Component::TileAccum, 1.2e-12, 4.0e-10);
    put(Component::TileBuffer, 1.0e-12, 8.0e-10);
    put(Component::TileInputBuffer, 1.0e-12, 1.2e-9);
    put(Component::GlobalBuffer, 2.0e-12, 2.0e-9);
    put(Component::GlobalAccum, 1.5e-12, 8.0e-10);
    put(Component::Pooling, 5.0e-13, 1.0e-10);
    put(Component::NeuronAdder, 2.0e-13, 5.0e-11);
    put(Component::NeuronSubtractor, 2.0e-13, 5.0e-11);
    put(Component::NeuronComparator, 1.5e-13, 4.0e-11);
    // vmem_cache: energy per access, area per byte (SRAM-like).
    put(Component::VmemCache, 1.0e-12, 4.0e-12);
    put(Component::NocRouter, 1.5e-12, 3.0e-9);
    t
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightEncoding {
    /// Shift negative weights by +2^p with the smallest p covering them.
    NiAware,
    /// Plain two's-complement cell values (p = k).
    Vanilla,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct BufferSizes {
    pub global_kb: u32,
    pub tile_kb: u32,
    pub pe_kb: u32,
    pub tile_input_kb: u32,
    pub pe_input_kb: u32,
}

impl Default for BufferSizes {
    fn default() -> Self {
        BufferSizes {
            global_kb: 20,
            tile_kb: 10,
            pe_kb: 5,
            tile_input_kb: 50,
            pe_input_kb: 30,
        }
    }
}

/// Cycle counts feeding the PE-latency decomposition. `alpha_override`
/// pins the PE latency directly, bypassing the decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct CycleCosts {
    pub input_load: u64,
    /// Cycles for one ADC conversion; one read scans `mux_size` conversions
    /// per ADC group.
    pub adc_conversion: u64,
    pub accumulate: u64,
    pub store: u64,
    pub alpha_override: Option<u64>,
}

impl Default for CycleCosts {
    fn default() -> Self {
        CycleCosts {
            input_load: 1,
            adc_conversion: 1,
            accumulate: 1,
            store: 1,
            alpha_override: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HardwareConfig {
    /// Crossbar rows/columns X (power of two, >= 8).
    pub x: usize,
    /// Crossbars per PE (N_C).
    pub crossbars_per_pe: usize,
    /// PEs per tile (N_PE).
    pub pes_per_tile: usize,
    /// Columns sharing one ADC.
    pub mux_size: usize,
    /// ADC precision h in bits.
    pub adc_bits: u8,
    /// DIFF speedup SU; a column group takes X/SU DIFF cycles.
    pub diff_speedup: usize,
    /// Expected maximum simultaneously active rows, sizing the ADC full
    /// scale: full_scale = V_read * G_max * min(X, this).
    pub adc_max_active_rows: usize,
    /// IMC device bits per cell b.
    pub bits_per_cell: u8,
    pub r_on: f64,
    /// May be infinite (G_min = 0).
    pub r_off: f64,
    /// Device conductance variation (std dev, in units of G_max - G_min).
    pub sigma: f64,
    /// Column wire resistance per segment, ohms.
    pub wire_resistance: f64,
    pub read_voltage: f64,
    pub supply_voltage: f64,
    pub clock_hz: f64,
    /// Per-layer scheduling factors in parts-per-million of each layer's
    /// op count; a single entry broadcasts to all layers.
    pub scheduling_factors_ppm: Vec<u64>,
    pub noc_width_bits: usize,
    pub noc_per_hop_cycles: u64,
    /// Mesh grid (rows, cols); `None` picks the smallest square that fits.
    pub noc_grid: Option<(usize, usize)>,
    pub buffers: BufferSizes,
    pub cycles: CycleCosts,
    pub weight_encoding: WeightEncoding,
    /// Evaluate layer 0 on crossbars bit-serially instead of digitally.
    pub layer0_crossbar: bool,
    /// Assumed spike sparsity for analytic energy when no inference ran.
    pub analytic_sparsity: f64,
    pub seed: u64,
    pub device_kind: String,
    pub costs: BTreeMap<String, CostEntry>,
}

impl Default for HardwareConfig {
    fn default() -> Self {
        HardwareConfig {
            x: 64,
            crossbars_per_pe: 9,
            pes_per_tile: 8,
            mux_size: 8,
            adc_bits: 4,
            diff_speedup: 64,
            adc_max_active_rows: 64,
            bits_per_cell: 4,
            r_on: 416.67,
            r_off: f64::INFINITY,
            sigma: 0.1,
            wire_resistance: 5.0,
            read_voltage: 0.1,
            supply_voltage: 0.9,
            clock_hz: 250.0e6,
            scheduling_factors_ppm: vec![250_000],
            noc_width_bits: 32,
            noc_per_hop_cycles: 1,
            noc_grid: None,
            buffers: BufferSizes::default(),
            cycles: CycleCosts::default(),
            weight_encoding: WeightEncoding::NiAware,
            layer0_crossbar: false,
            analytic_sparsity: 0.5,
            seed: 0,
            device_kind: "sram".into(),
            costs: default_cost_table(),
        }
    }
}

impl HardwareConfig {
    pub fn g_max(&self) -> f64 {
        1.0 / self.r_on
    }

    pub fn g_min(&self) -> f64 {
        if self.r_off.is_infinite() {
            0.0
        } else {
            1.0 / self.r_off
        }
    }

    pub fn clock_period(&self) -> f64 {
        1.0 / self.clock_hz
    }

    pub fn cost(&self, c: Component) -> CostEntry {
        // validate() guarantees presence.
        self.costs[c.key()]
    }

    /// Scheduling factor for mapped layer index `i` (broadcast semantics).
    pub fn scheduling_factor_ppm(&self, i: usize) -> u64 {
        if self.scheduling_factors_ppm.len() == 1 {
            self.scheduling_factors_ppm[0]
        } else {
            self.scheduling_factors_ppm[i]
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig { msg });
        if self.x < 8 || !self.x.is_power_of_two() {
            return bad(format!("x must be a power of two >= 8, got {}", self.x));
        }
        if self.diff_speedup == 0
            || self.diff_speedup > self.x
            || self.x % self.diff_speedup != 0
        {
            return bad(format!(
                "diff_speedup {} must divide x {} and lie in 1..=x",
                self.diff_speedup, self.x
            ));
        }
        if self.mux_size == 0 || self.x % self.mux_size != 0 {
            return bad(format!(
                "mux_size {} must divide x {}",
                self.mux_size, self.x
            ));
        }
        if !(1..=8).contains(&self.bits_per_cell) {
            return bad(format!("bits_per_cell must be in 1..=8, got {}", self.bits_per_cell));
        }
        if !(1..=30).contains(&self.adc_bits) {
            return bad(format!("adc_bits must be in 1..=30, got {}", self.adc_bits));
        }
        if !(self.r_on > 0.0) {
            return bad("r_on must be positive".into());
        }
        if !(self.r_on < self.r_off) {
            return bad(format!("r_on ({}) must be < r_off ({})", self.r_on, self.r_off));
        }
        if self.wire_resistance < 0.0 {
            return bad("wire_resistance must be >= 0".into());
        }
        if self.sigma < 0.0 {
            return bad("sigma must be >= 0".into());
        }
        if !(self.read_voltage > 0.0) {
            return bad("read_voltage must be positive".into());
        }
        if !(self.clock_hz > 0.0) {
            return bad("clock_hz must be positive".into());
        }
        if self.crossbars_per_pe == 0 || self.pes_per_tile == 0 {
            return bad("crossbars_per_pe and pes_per_tile must be >= 1".into());
        }
        if self.adc_max_active_rows == 0 {
            return bad("adc_max_active_rows must be >= 1".into());
        }
        if self.noc_width_bits == 0 {
            return bad("noc_width_bits must be >= 1".into());
        }
        if self.scheduling_factors_ppm.is_empty() {
            return bad("scheduling_factors must not be empty".into());
        }
        for &f in &self.scheduling_factors_ppm {
            if f == 0 || f > 1_000_000 {
                return bad(format!(
                    "scheduling factor {} ppm outside (0, 100%]",
                    f
                ));
            }
        }
        if !(0.0..=1.0).contains(&self.analytic_sparsity) {
            return bad("analytic_sparsity must lie in [0, 1]".into());
        }
        if let Some((r, c)) = self.noc_grid {
            if r == 0 || c == 0 {
                return bad("noc grid dimensions must be >= 1".into());
            }
        }
        // Closed-world cost check: every component the cost engine can name
        // must be priced now.
        for c in Component::ALL {
            let entry = self
                .costs
                .get(c.key())
                .ok_or_else(|| Error::MissingCostEntry {
                    component: c.key().to_string(),
                })?;
            if entry.energy < 0.0 || entry.area < 0.0 {
                return bad(format!("cost entry for {} must be non-negative", c.key()));
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// TOML representation
// ---------------------------------------------------------------------------

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawConfig {
    x: Option<usize>,
    crossbars_per_pe: Option<usize>,
    pes_per_tile: Option<usize>,
    mux_size: Option<usize>,
    adc_bits: Option<u8>,
    diff_speedup: Option<usize>,
    adc_max_active_rows: Option<usize>,
    read_voltage: Option<f64>,
    supply_voltage: Option<f64>,
    clock_hz: Option<f64>,
    scheduling_factors: Option<Vec<f64>>,
    weight_encoding: Option<WeightEncoding>,
    layer0_crossbar: Option<bool>,
    analytic_sparsity: Option<f64>,
    seed: Option<u64>,
    device: RawDevice,
    noc: RawNoc,
    buffers: Option<BufferSizes>,
    cycles: Option<CycleCosts>,
    cost: BTreeMap<String, CostEntry>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawDevice {
    kind: Option<String>,
    bits_per_cell: Option<u8>,
    r_on: Option<f64>,
    r_off: Option<f64>,
    sigma: Option<f64>,
    wire_resistance: Option<f64>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawNoc {
    width_bits: Option<usize>,
    per_hop_cycles: Option<u64>,
    grid_rows: Option<usize>,
    grid_cols: Option<usize>,
}

fn factor_to_ppm(f: f64) -> Result<u64> {
    if !f.is_finite() || f <= 0.0 || f > 1.0 {
        return Err(Error::InvalidConfig {
            msg: format!("scheduling factor {} outside (0, 1]", f),
        });
    }
    Ok((f * 1.0e6).round() as u64)
}

/// Parse a config from TOML text, filling absent keys with defaults.
pub fn parse_config(text: &str) -> Result<HardwareConfig> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| Error::InvalidConfig {
        msg: format!("config parse error: {e}"),
    })?;
    let d = HardwareConfig::default();
    let mut costs = default_cost_table();
    for (k, v) in raw.cost {
        if !Component::ALL.iter().any(|c| c.key() == k) {
            return Err(Error::InvalidConfig {
                msg: format!("unknown cost-table component `{k}`"),
            });
        }
        costs.insert(k, v);
    }
    let noc_grid = match (raw.noc.grid_rows, raw.noc.grid_cols) {
        (Some(r), Some(c)) => Some((r, c)),
        (None, None) => None,
        _ => {
            return Err(Error::InvalidConfig {
                msg: "noc grid_rows and grid_cols must be given together".into(),
            })
        }
    };
    let scheduling_factors_ppm = match raw.scheduling_factors {
        Some(fs) => fs
            .into_iter()
            .map(factor_to_ppm)
            .collect::<Result<Vec<_>>>()?,
        None => d.scheduling_factors_ppm.clone(),
    };
    let hw = HardwareConfig {
        x: raw.x.unwrap_or(d.x),
        crossbars_per_pe: raw.crossbars_per_pe.unwrap_or(d.crossbars_per_pe),
        pes_per_tile: raw.pes_per_tile.unwrap_or(d.pes_per_tile),
        mux_size: raw.mux_size.unwrap_or(d.mux_size),
        adc_bits: raw.adc_bits.unwrap_or(d.adc_bits),
        diff_speedup: raw.diff_speedup.unwrap_or(d.diff_speedup),
        adc_max_active_rows: raw.adc_max_active_rows.or(raw.x).unwrap_or(d.adc_max_active_rows),
        bits_per_cell: raw.device.bits_per_cell.unwrap_or(d.bits_per_cell),
        r_on: raw.device.r_on.unwrap_or(d.r_on),
        r_off: raw.device.r_off.unwrap_or(d.r_off),
        sigma: raw.device.sigma.unwrap_or(d.sigma),
        wire_resistance: raw.device.wire_resistance.unwrap_or(d.wire_resistance),
        read_voltage: raw.read_voltage.unwrap_or(d.read_voltage),
        supply_voltage: raw.supply_voltage.unwrap_or(d.supply_voltage),
        clock_hz: raw.clock_hz.unwrap_or(d.clock_hz),
        scheduling_factors_ppm,
        noc_width_bits: raw.noc.width_bits.unwrap_or(d.noc_width_bits),
        noc_per_hop_cycles: raw.noc.per_hop_cycles.unwrap_or(d.noc_per_hop_cycles),
        noc_grid,
        buffers: raw.buffers.unwrap_or_default(),
        cycles: raw.cycles.unwrap_or_default(),
        weight_encoding: raw.weight_encoding.unwrap_or(d.weight_encoding),
        layer0_crossbar: raw.layer0_crossbar.unwrap_or(d.layer0_crossbar),
        analytic_sparsity: raw.analytic_sparsity.unwrap_or(d.analytic_sparsity),
        seed: raw.seed.unwrap_or(d.seed),
        device_kind: raw.device.kind.unwrap_or_else(|| d.device_kind.clone()),
        costs,
    };
    hw.validate()?;
    Ok(hw)
}

pub fn load_config(path: impl AsRef<Path>) -> Result<HardwareConfig> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config(&text)
}

/// Serialize a config back to fully explicit TOML.
pub fn save_config(hw: &HardwareConfig, path: impl AsRef<Path>) -> Result<()> {
    let raw = RawConfig {
        x: Some(hw.x),
        crossbars_per_pe: Some(hw.crossbars_per_pe),
        pes_per_tile: Some(hw.pes_per_tile),
        mux_size: Some(hw.mux_size),
        adc_bits: Some(hw.adc_bits),
        diff_speedup: Some(hw.diff_speedup),
        adc_max_active_rows: Some(hw.adc_max_active_rows),
        read_voltage: Some(hw.read_voltage),
        supply_voltage: Some(hw.supply_voltage),
        clock_hz: Some(hw.clock_hz),
        scheduling_factors: Some(
            hw.scheduling_factors_ppm
                .iter()
                .map(|&p| p as f64 / 1.0e6)
                .collect(),
        ),
        weight_encoding: Some(hw.weight_encoding),
        layer0_crossbar: Some(hw.layer0_crossbar),
        analytic_sparsity: Some(hw.analytic_sparsity),
        seed: Some(hw.seed),
        device: RawDevice {
            kind: Some(hw.device_kind.clone()),
            bits_per_cell: Some(hw.bits_per_cell),
            r_on: Some(hw.r_on),
            r_off: Some(hw.r_off),
            sigma: Some(hw.sigma),
            wire_resistance: Some(hw.wire_resistance),
        },
        noc: RawNoc {
            width_bits: Some(hw.noc_width_bits),
            per_hop_cycles: Some(hw.noc_per_hop_cycles),
            grid_rows: hw.noc_grid.map(|g| g.0),
            grid_cols: hw.noc_grid.map(|g| g.1),
        },
        buffers: Some(hw.buffers),
        cycles: Some(hw.cycles),
        cost: hw.costs.clone(),
    };
    let text = toml::to_string_pretty(&raw).map_err(|e| Error::InvalidConfig {
        msg: format!("config serialize error: {e}"),
    })?;
    fs::write(path.as_ref(), text).map_err(|e| Error::io(path.as_ref(), e))
}
