//! Data files, plot scripts and the run manifest.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::config::{Format, RunConfig};
use crate::run::{Subcommand, Table};
use crate::CliError;

const VERSION: &str = env!("CARGO_PKG_VERSION");

fn io_error(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    path.with_file_name(format!("{stem}{suffix}"))
}

fn file_name(path: &Path) -> String {
    path.file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

/// CSV text: `#` header lines with the column units, notes and the
/// configuration echo, then a header row and the numeric rows.
pub fn csv_bytes(table: &Table, cfg: &RunConfig, sub: Subcommand) -> Result<Vec<u8>, CliError> {
    let mut out = Vec::new();
    let columns: Vec<_> = std::iter::once(&table.grid).chain(&table.series).collect();
    writeln!(out, "# eigshape {VERSION} {}", sub.name()).expect("write to memory");
    let units: Vec<String> = columns.iter().map(|c| format!("{} [{}]", c.name, c.unit)).collect();
    writeln!(out, "# columns: {}", units.join(", ")).expect("write to memory");
    for note in &table.notes {
        writeln!(out, "# {note}").expect("write to memory");
    }
    writeln!(out, "# config:").expect("write to memory");
    for (k, v) in cfg.values.echo() {
        writeln!(out, "# {k} = {v}").expect("write to memory");
    }
    let mut w = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| CliError::Io {
        path: PathBuf::from("<csv buffer>"),
        source: e.into(),
    };
    w.write_record(columns.iter().map(|c| c.name.as_str()))
        .map_err(csv_err)?;
    for i in 0..table.grid.values.len() {
        w.write_record(columns.iter().map(|c| format!("{:e}", c.values[i])))
            .map_err(csv_err)?;
    }
    w.into_inner().map_err(|e| CliError::Io {
        path: PathBuf::from("<csv buffer>"),
        source: e.into_error(),
    })
}

/// JSON object with the grid, the series, units, notes and the echo.
pub fn json_bytes(table: &Table, cfg: &RunConfig, sub: Subcommand) -> Vec<u8> {
    let series: Map<String, Value> = table.series.iter().map(|c| (c.name.clone(), json!(c.values))).collect();
    let units: Map<String, Value> = std::iter::once(&table.grid)
        .chain(&table.series)
        .map(|c| (c.name.clone(), json!(c.unit)))
        .collect();
    let doc = json!({
        "tool": "eigshape",
        "version": VERSION,
        "subcommand": sub.name(),
        "grid_name": table.grid.name,
        "grid": table.grid.values,
        "series": series,
        "units": units,
        "notes": table.notes,
        "config": config_map(cfg),
    });
    let mut bytes = serde_json::to_vec_pretty(&doc).expect("serializable");
    bytes.push(b'\n');
    bytes
}

fn config_map(cfg: &RunConfig) -> Map<String, Value> {
    cfg.values
        .echo()
        .into_iter()
        .map(|(k, v)| (k.to_string(), json!(v)))
        .collect()
}

/// gnuplot script for a CSV file, or a matplotlib script for a JSON file.
pub fn plot_script(table: &Table, data: &Path, format: Format) -> String {
    let name = file_name(data);
    match format {
        Format::Csv => {
            let plots: Vec<String> = (0..table.series.len())
                .map(|i| {
                    let src = if i == 0 { format!("'{name}'") } else { "''".to_string() };
                    format!("{src} using 1:{} with lines title columnhead", i + 2)
                })
                .collect();
            format!(
                "# gnuplot script for {name}\nset datafile separator ','\nset datafile commentschars '#'\n\
                 set xlabel '{} [{}]'\nset key outside\nplot {}\npause -1\n",
                table.grid.name,
                table.grid.unit,
                plots.join(", \\\n     ")
            )
        }
        Format::Json => format!(
            "# matplotlib script for {name}\nimport json\nimport matplotlib.pyplot as plt\n\n\
             with open('{name}') as f:\n    data = json.load(f)\nfor label, ys in data['series'].items():\n    \
             plt.plot(data['grid'], ys, label=label)\nplt.xlabel('{} [{}]')\nplt.legend()\nplt.show()\n",
            table.grid.name, table.grid.unit
        ),
    }
}

/// Paths written by one run.
#[derive(Debug, Clone, PartialEq)]
pub struct Written {
    pub data: PathBuf,
    pub plot_script: Option<PathBuf>,
    pub manifest: PathBuf,
}

fn file_entry(path: &Path, bytes: &[u8]) -> Value {
    json!({
        "path": file_name(path),
        "bytes": bytes.len(),
        "sha256": hex::encode(Sha256::digest(bytes)),
    })
}

/// Manifest: the configuration echo, grid metadata, file checksums, the
/// tool version and a creation time.
pub fn manifest(table: &Table, cfg: &RunConfig, sub: Subcommand, files: &[(PathBuf, Vec<u8>)]) -> Value {
    let grid = &table.grid.values;
    let created = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
    json!({
        "tool": "eigshape",
        "version": VERSION,
        "subcommand": sub.name(),
        "created_unix": created,
        "config": config_map(cfg),
        "config_text": cfg.values.to_config_text(),
        "grid": {
            "name": table.grid.name,
            "unit": table.grid.unit,
            "points": grid.len(),
            "min": grid.first(),
            "max": grid.last(),
        },
        "series": table.series.iter().map(|c| json!({"name": c.name, "unit": c.unit})).collect::<Vec<_>>(),
        "files": files.iter().map(|(p, b)| file_entry(p, b)).collect::<Vec<_>>(),
    })
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(io_error(path))
}

/// Writes the data file, the optional plot script and the manifest.
pub fn write_outputs(table: &Table, cfg: &RunConfig, sub: Subcommand) -> Result<Written, CliError> {
    let data = cfg.output_path(sub.name());
    let format = cfg.format();
    let bytes = match format {
        Format::Csv => csv_bytes(table, cfg, sub)?,
        Format::Json => json_bytes(table, cfg, sub),
    };
    write_file(&data, &bytes)?;
    let mut files = vec![(data.clone(), bytes)];
    let plot_script_path = if cfg.values.emit_plot_script {
        let ext = match format {
            Format::Csv => ".gp",
            Format::Json => ".plot.py",
        };
        let path = sibling(&data, ext);
        let text = plot_script(table, &data, format).into_bytes();
        write_file(&path, &text)?;
        files.push((path.clone(), text));
        Some(path)
    } else {
        None
    };
    let manifest_path = sibling(&data, ".manifest.json");
    let mut text = serde_json::to_vec_pretty(&manifest(table, cfg, sub, &files)).expect("serializable");
    text.push(b'\n');
    write_file(&manifest_path, &text)?;
    Ok(Written {
        data,
        plot_script: plot_script_path,
        manifest: manifest_path,
    })
}
