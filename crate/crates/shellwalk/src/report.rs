//! Report files: CSV tables, JSON summaries and gnuplot data.
//!
//! Nothing here records wall-clock time, so identical inputs give identical bytes.

use std::io::Write;

use serde::Serialize;

use shellwalk_core::experiment::CdfReport;
use shellwalk_core::{CleaningReport, Graph, PairedReport, ShellAssignment, ShellProfile, TargetSet, WalkResult};

pub type CsvResult = std::result::Result<(), csv::Error>;

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

#[derive(Clone, Debug, Serialize)]
pub struct InputSummary {
    pub nodes: usize,
    pub edges: usize,
    pub self_loops: usize,
    pub duplicates: usize,
    pub comment_lines: usize,
}

impl InputSummary {
    pub fn new(g: &Graph, cleaning: &CleaningReport, comment_lines: usize) -> Self {
        InputSummary {
            nodes: g.node_count(),
            edges: g.edge_count(),
            self_loops: cleaning.self_loops,
            duplicates: cleaning.duplicates,
            comment_lines,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionSummary {
    pub n: usize,
    pub m: usize,
    pub core_index: u32,
    /// Node count of every shell index from 0 to the core.
    pub shell_sizes: Vec<usize>,
    pub largest_component_only: bool,
    pub input: InputSummary,
}

impl DecompositionSummary {
    pub fn new(g: &Graph, a: &ShellAssignment, largest_component_only: bool, input: InputSummary) -> Self {
        DecompositionSummary {
            n: g.node_count(),
            m: g.edge_count(),
            core_index: a.core_index(),
            shell_sizes: a.shells().iter().map(Vec::len).collect(),
            largest_component_only,
            input,
        }
    }
}

pub fn write_json<T: Serialize, W: Write>(value: &T, mut w: W) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)
}

pub fn write_profile_csv<W: Write>(profile: &ShellProfile, pseudo: Option<&TargetSet>, w: W) -> CsvResult {
    let mut out = csv::Writer::from_writer(w);
    out.write_record([
        "shell_index",
        "node_count",
        "intra_edge_count",
        "density",
        "cascade_mean",
        "cascade_std",
        "cascade_samples",
        "leakage_power",
        "pseudo_core",
    ])?;
    for r in &profile.shells {
        out.write_record([
            r.shell_index.to_string(),
            r.node_count.to_string(),
            r.intra_edge_count.to_string(),
            r.density.to_string(),
            opt(r.cascade.map(|c| c.mean)),
            opt(r.cascade.map(|c| c.std)),
            opt(r.cascade.map(|c| c.samples)),
            opt(r.leakage_power),
            opt(pseudo.map(|p| p.contains(r.shell_index))),
        ])?;
    }
    out.flush()?;
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct ProfileSummary<'a> {
    pub n: usize,
    pub m: usize,
    pub core_index: u32,
    pub kappa: f64,
    pub theta: f64,
    pub p_infect: f64,
    pub samples: u64,
    pub densest_shell: Option<u32>,
    pub pseudo_core_indices: &'a TargetSet,
    pub shells: &'a [shellwalk_core::metrics::ShellRecord],
}

/// One row per shell: `shell_index,n_nodes,mean,std,samples,p_infect`.
pub fn write_cascading_power_csv<W: Write>(profile: &ShellProfile, p_infect: f64, w: W) -> CsvResult {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["shell_index", "n_nodes", "mean", "std", "samples", "p_infect"])?;
    for r in &profile.shells {
        let Some(c) = r.cascade else { continue };
        out.write_record([
            r.shell_index.to_string(),
            r.node_count.to_string(),
            c.mean.to_string(),
            c.std.to_string(),
            c.samples.to_string(),
            p_infect.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// `k` followed by one `P(R <= k)` column per algorithm.
pub fn write_cdf_csv<W: Write>(report: &CdfReport, w: W) -> CsvResult {
    let mut out = csv::Writer::from_writer(w);
    let mut header = vec!["k".to_string()];
    header.extend(report.algorithms.iter().map(|a| a.algorithm.code().to_string()));
    out.write_record(&header)?;
    for (i, k) in report.ks().enumerate() {
        let mut row = vec![k.to_string()];
        row.extend(report.algorithms.iter().map(|a| a.cdf[i].to_string()));
        out.write_record(&row)?;
    }
    out.flush()?;
    Ok(())
}

/// Whitespace-separated columns for `plot "cdf.dat" using 1:2 with linespoints`.
pub fn write_cdf_dat<W: Write>(report: &CdfReport, mut w: W) -> std::io::Result<()> {
    let codes: Vec<&str> = report.algorithms.iter().map(|a| a.algorithm.code()).collect();
    writeln!(w, "# P(R <= k) over reached walks; targets {:?}", report.targets.iter().collect::<Vec<_>>())?;
    writeln!(w, "# k {}", codes.join(" "))?;
    for (i, k) in report.ks().enumerate() {
        write!(w, "{k}")?;
        for a in &report.algorithms {
            write!(w, " {}", a.cdf[i])?;
        }
        writeln!(w)?;
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct RatioEntry {
    pub algorithm: shellwalk_core::Algorithm,
    pub mean_step_ratio: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompareSummary<'a> {
    pub core_targets: &'a TargetSet,
    pub pseudo_targets: &'a TargetSet,
    pub instance_count: usize,
    pub ratios: Vec<RatioEntry>,
    pub core: &'a CdfReport,
    pub pseudo: &'a CdfReport,
}

impl<'a> CompareSummary<'a> {
    pub fn new(paired: &'a PairedReport) -> Self {
        CompareSummary {
            core_targets: &paired.core.targets,
            pseudo_targets: &paired.pseudo.targets,
            instance_count: paired.core.instance_count,
            ratios: paired
                .mean_step_ratio
                .iter()
                .map(|&(algorithm, mean_step_ratio)| RatioEntry {
                    algorithm,
                    mean_step_ratio,
                })
                .collect(),
            core: &paired.core,
            pseudo: &paired.pseudo,
        }
    }
}

/// `step,node_label,shell` for every node on the walk, the start being step 0.
pub fn write_walk_trace<W: Write>(g: &Graph, a: &ShellAssignment, walk: &WalkResult, w: W) -> CsvResult {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["step", "node_label", "shell"])?;
    for (step, &u) in walk.path.iter().enumerate() {
        out.write_record([step.to_string(), g.label(u).to_string(), a.shell(u).to_string()])?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use shellwalk_core::experiment::Outcome;
    use shellwalk_core::{k_shell_decompose, Algorithm, NodeId, WalkStatus};

    fn text(f: impl FnOnce(&mut Vec<u8>)) -> String {
        let mut buf = Vec::new();
        f(&mut buf);
        String::from_utf8(buf).unwrap()
    }

    fn report() -> CdfReport {
        let o = |steps| Outcome {
            status: WalkStatus::Reached,
            steps,
        };
        CdfReport::assemble(
            TargetSet::from_iter([3]),
            &[Algorithm::RandomWalk, Algorithm::ShellHillClimb],
            4,
            &[vec![o(2), o(2)], vec![o(4), o(3)]],
        )
    }

    #[test]
    fn cdf_csv_layout() {
        let s = text(|b| write_cdf_csv(&report(), b).unwrap());
        assert_eq!(s, "k,rw,sh\n2,0.5,0.5\n3,0.5,1\n4,1,1\n");
    }

    #[test]
    fn cdf_dat_layout() {
        let s = text(|b| write_cdf_dat(&report(), b).unwrap());
        assert!(s.ends_with("# k rw sh\n2 0.5 0.5\n3 0.5 1\n4 1 1\n"), "{s}");
    }

    #[test]
    fn profile_csv_blank_cells() {
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)]);
        let a = k_shell_decompose(&g);
        let p = ShellProfile::structural(&g, &a, 1.0);
        let s = text(|b| write_profile_csv(&p, None, b).unwrap());
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[1], "1,1,0,0,,,,0.5,");
        assert_eq!(lines[2], "3,4,6,1,,,,0,");
    }

    #[test]
    fn trace_rows() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let a = k_shell_decompose(&g);
        let w = WalkResult {
            start: NodeId(0),
            numsteps: 2,
            status: WalkStatus::Reached,
            path: vec![NodeId(0), NodeId(1), NodeId(2)],
        };
        let s = text(|b| write_walk_trace(&g, &a, &w, b).unwrap());
        assert_eq!(s, "step,node_label,shell\n0,0,1\n1,1,1\n2,2,1\n");
    }
}
