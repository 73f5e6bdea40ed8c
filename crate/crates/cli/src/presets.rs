//! Named parameter sets `fig1a` .. `fig7b`.

use std::fmt;
use std::str::FromStr;

use nlc_core::ModelParams;

use crate::config::RunConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FigurePreset {
    Fig1a,
    Fig1b,
    Fig1c,
    Fig2a,
    Fig2b,
    Fig2c,
    Fig3a,
    Fig3b,
    Fig4a,
    Fig4b,
    Fig5a,
    Fig5b,
    Fig5c,
    Fig6b,
    Fig6c,
    Fig7a,
    Fig7b,
}

struct Couplings {
    j: (f64, f64, f64),
    d: (f64, f64),
    field: (f64, f64),
    gamma: f64,
}

const WEAK_J: (f64, f64, f64) = (0.8, 0.8, 0.8);
const STRONG_J: (f64, f64, f64) = (1.0, 0.5, 1.5);
const WEAK_FIELD: (f64, f64) = (0.3, 0.5);

impl FigurePreset {
    pub const ALL: [FigurePreset; 17] = [
        FigurePreset::Fig1a,
        FigurePreset::Fig1b,
        FigurePreset::Fig1c,
        FigurePreset::Fig2a,
        FigurePreset::Fig2b,
        FigurePreset::Fig2c,
        FigurePreset::Fig3a,
        FigurePreset::Fig3b,
        FigurePreset::Fig4a,
        FigurePreset::Fig4b,
        FigurePreset::Fig5a,
        FigurePreset::Fig5b,
        FigurePreset::Fig5c,
        FigurePreset::Fig6b,
        FigurePreset::Fig6c,
        FigurePreset::Fig7a,
        FigurePreset::Fig7b,
    ];

    pub fn id(self) -> &'static str {
        match self {
            FigurePreset::Fig1a => "fig1a",
            FigurePreset::Fig1b => "fig1b",
            FigurePreset::Fig1c => "fig1c",
            FigurePreset::Fig2a => "fig2a",
            FigurePreset::Fig2b => "fig2b",
            FigurePreset::Fig2c => "fig2c",
            FigurePreset::Fig3a => "fig3a",
            FigurePreset::Fig3b => "fig3b",
            FigurePreset::Fig4a => "fig4a",
            FigurePreset::Fig4b => "fig4b",
            FigurePreset::Fig5a => "fig5a",
            FigurePreset::Fig5b => "fig5b",
            FigurePreset::Fig5c => "fig5c",
            FigurePreset::Fig6b => "fig6b",
            FigurePreset::Fig6c => "fig6c",
            FigurePreset::Fig7a => "fig7a",
            FigurePreset::Fig7b => "fig7b",
        }
    }

    fn couplings(self) -> Couplings {
        use FigurePreset::*;
        let (j, d, field, gamma) = match self {
            Fig1a => (WEAK_J, (0.0, 0.0), WEAK_FIELD, 0.0),
            Fig1b => (WEAK_J, (0.5, 0.0), WEAK_FIELD, 0.0),
            Fig1c => (WEAK_J, (0.5, 0.5), WEAK_FIELD, 0.0),
            Fig2a => (STRONG_J, (0.5, 0.5), WEAK_FIELD, 0.0),
            Fig2b => ((5.0, 1.0, 1.5), (0.5, 0.5), WEAK_FIELD, 0.0),
            Fig2c => (WEAK_J, (2.0, 2.0), WEAK_FIELD, 0.0),
            Fig3a => (STRONG_J, (0.5, 0.5), (2.0, 0.5), 0.0),
            Fig3b => (STRONG_J, (0.5, 0.5), (10.0, 0.5), 0.0),
            Fig4a => (STRONG_J, (0.5, 0.5), (0.3, 2.0), 0.0),
            Fig4b => (STRONG_J, (0.5, 0.5), (0.3, 10.0), 0.0),
            Fig5a => (WEAK_J, (0.0, 0.0), WEAK_FIELD, 0.05),
            Fig5b => (WEAK_J, (0.5, 0.5), WEAK_FIELD, 0.05),
            Fig5c => (WEAK_J, (2.0, 2.0), WEAK_FIELD, 0.05),
            Fig6b => (STRONG_J, (0.5, 0.5), WEAK_FIELD, 0.05),
            Fig6c => (STRONG_J, (2.0, 2.0), WEAK_FIELD, 0.05),
            Fig7a => (STRONG_J, (0.5, 0.5), (2.0, 0.5), 0.05),
            Fig7b => (STRONG_J, (0.5, 0.5), (0.3, 2.0), 0.05),
        };
        Couplings { j, d, field, gamma }
    }

    pub fn params(self) -> ModelParams {
        let c = self.couplings();
        ModelParams {
            j_x: c.j.0,
            j_y: c.j.1,
            j_z: c.j.2,
            d_x: c.d.0,
            d_y: c.d.1,
            b_uniform: c.field.0,
            b_inhomog: c.field.1,
            gamma: c.gamma,
        }
    }

    /// Default run configuration (grid `[0, 8π]`, 2001 samples).
    pub fn config(self) -> RunConfig {
        RunConfig::new(self.params())
    }
}

impl fmt::Display for FigurePreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for FigurePreset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let wanted = s.to_ascii_lowercase();
        Self::ALL
            .into_iter()
            .find(|p| p.id() == wanted)
            .ok_or_else(|| format!("unknown preset `{s}` (expected one of fig1a..fig7b)"))
    }
}
