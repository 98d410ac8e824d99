//! File exports: the interval `[1, π]` as DOT, plots and μ tables as CSV.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::Subcommand;
use muposet::balloon::pi_sequence;
use muposet::interval::Interval;
use muposet::store::MuCache;
use muposet::Permutation;

#[derive(Subcommand, Debug)]
pub enum Export {
    /// Cover relations of `[1, π]`, one DOT node per permutation.
    Hasse {
        pi: Permutation,
        #[arg(long)]
        dot: PathBuf,
    },
    /// `(index, value)` pairs of a permutation, or of π^(n) with --sequence.
    Plot {
        #[arg(required_unless_present = "sequence", conflicts_with = "sequence")]
        pi: Option<Permutation>,
        #[arg(long)]
        sequence: Option<usize>,
        #[arg(long)]
        csv: PathBuf,
    },
}

impl Export {
    pub fn run(self) -> anyhow::Result<()> {
        match self {
            Export::Hasse { pi, dot } => write_hasse(&pi, &dot),
            Export::Plot { pi, sequence, csv } => {
                let pi = match (pi, sequence) {
                    (Some(p), _) => p,
                    (None, Some(n)) => pi_sequence(n)?,
                    (None, None) => unreachable!("clap requires one of them"),
                };
                write_plot(&pi, &csv)
            }
        }
    }
}

fn create(path: &Path) -> anyhow::Result<BufWriter<File>> {
    let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(BufWriter::new(f))
}

pub fn write_hasse(pi: &Permutation, path: &Path) -> anyhow::Result<()> {
    let iv = Interval::new(pi);
    let mut w = create(path)?;
    writeln!(w, "digraph interval {{")?;
    writeln!(w, "  rankdir=BT;")?;
    for p in iv.elements() {
        writeln!(w, "  \"{p}\";")?;
    }
    for i in 0..iv.len() {
        for &j in iv.covers(i) {
            writeln!(w, "  \"{}\" -> \"{}\";", iv.element(j), iv.element(i))?;
        }
    }
    writeln!(w, "}}")?;
    w.flush()?;
    Ok(())
}

pub fn write_plot(pi: &Permutation, path: &Path) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(create(path)?);
    w.write_record(["index", "value"])?;
    for (i, v) in pi.values().iter().enumerate() {
        w.write_record([(i + 1).to_string(), v.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Every cached class representative of length at most `max_len`.
pub fn write_mu_csv(path: &Path, cache: &MuCache, max_len: usize) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(create(path)?);
    w.write_record(["perm", "mu"])?;
    for (p, m) in cache.sorted_entries() {
        if p.len() <= max_len {
            w.write_record([p.to_string(), m.to_string()])?;
        }
    }
    w.flush()?;
    Ok(())
}
