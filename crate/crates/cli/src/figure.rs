//! Figure presets: one swept parameter, the others held fixed, `t1 = 0`.

use std::fmt::Write as _;
use std::str::FromStr;

use lgi_decay::csv::fmt_sig;
use lgi_decay::{LgiOrder, LorentzianSpectrum};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Swept {
    Gamma,
    Lambda,
    Delta,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigurePreset {
    pub id: &'static str,
    pub param: &'static str,
    pub swept: Swept,
    pub values: &'static [f64],
    /// `(gamma, lambda, delta)`; the swept entry is replaced per curve.
    pub base: (f64, f64, f64),
}

pub const PRESETS: &[FigurePreset] = &[
    FigurePreset {
        id: "fig1",
        param: "gamma",
        swept: Swept::Gamma,
        values: &[0.01, 0.1, 0.3, 0.5],
        base: (0.0, 5.0, 0.0),
    },
    FigurePreset {
        id: "fig2",
        param: "lambda",
        swept: Swept::Lambda,
        values: &[1.0, 5.0, 10.0, 40.0],
        base: (0.5, 0.0, 10.0),
    },
    FigurePreset {
        id: "fig3",
        param: "delta",
        swept: Swept::Delta,
        values: &[0.0, 5.0, 10.0, 50.0],
        base: (0.2, 5.0, 0.0),
    },
];

impl FromStr for FigurePreset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        PRESETS.iter().find(|p| p.id == s).cloned().ok_or_else(|| {
            let ids: Vec<&str> = PRESETS.iter().map(|p| p.id).collect();
            format!("unknown figure `{s}` (expected one of {})", ids.join(", "))
        })
    }
}

impl FigurePreset {
    pub fn spectrum(&self, value: f64, omega0: f64) -> lgi_decay::Result<LorentzianSpectrum> {
        let (mut gamma, mut lambda, mut delta) = self.base;
        match self.swept {
            Swept::Gamma => gamma = value,
            Swept::Lambda => lambda = value,
            Swept::Delta => delta = value,
        }
        LorentzianSpectrum::with_omega0(gamma, lambda, delta, omega0)
    }

    pub fn spectra(&self, omega0: f64) -> lgi_decay::Result<Vec<LorentzianSpectrum>> {
        self.values.iter().map(|&v| self.spectrum(v, omega0)).collect()
    }

    pub fn curve_file(&self, value: f64) -> String {
        format!("{}_{}_{}.csv", self.id, self.param, fmt_sig(value))
    }

    /// Gnuplot script drawing every curve and the classical bound.
    pub fn plot_script(&self, files: &[String], order: LgiOrder) -> String {
        let column = order.term_names().len() + 2;
        let witness = order.witness_name();
        let mut s = String::new();
        let _ = writeln!(s, "set terminal pngcairo size 900,600");
        let _ = writeln!(s, "set output '{}.png'", self.id);
        let _ = writeln!(s, "set datafile separator ','");
        let _ = writeln!(s, "set xlabel 'omega0 tau'");
        let _ = writeln!(s, "set ylabel '{witness}'");
        let _ = writeln!(s, "set key top right");
        let mut parts: Vec<String> = files
            .iter()
            .zip(self.values)
            .map(|(f, v)| {
                format!(
                    "'{f}' using 1:{column} skip 1 with lines lw 2 title '{} = {}'",
                    self.param,
                    fmt_sig(*v)
                )
            })
            .collect();
        parts.push(format!(
            "{} with lines dt 2 lc rgb 'black' title 'classical bound'",
            fmt_sig(order.bound())
        ));
        let _ = writeln!(s, "plot {}", parts.join(", \\\n     "));
        s
    }
}
