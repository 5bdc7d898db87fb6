use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use nalgebra::DMatrix;

use super::PointCloud;
use crate::error::{LleError, Result};

/// Formats a float with 17 significant digits, enough for an exact
/// round-trip of any `f64`.
pub(crate) fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn csv_err(e: csv::Error) -> LleError {
    let line = e.position().map(|p| p.line()).unwrap_or(0);
    match e.into_kind() {
        csv::ErrorKind::Io(io) => LleError::Io(io),
        csv::ErrorKind::UnequalLengths { expected_len, len, .. } => LleError::Parse {
            line,
            message: format!("expected {expected_len} fields, found {len}"),
        },
        other => LleError::Parse { line, message: format!("{other:?}") },
    }
}

/// Writes one row per point: columns `x1..xD`, then `s,h` when the cloud
/// carries a chart.
pub fn write_csv<W: Write>(cloud: &PointCloud, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let mut header: Vec<String> = (1..=cloud.dim()).map(|j| format!("x{j}")).collect();
    if cloud.params().is_some() {
        header.push("s".into());
        header.push("h".into());
    }
    w.write_record(&header).map_err(csv_err)?;
    for i in 0..cloud.len() {
        let mut row: Vec<String> = cloud.point(i).iter().map(|v| fmt_f64(*v)).collect();
        if let Some(p) = cloud.params() {
            row.push(fmt_f64(p[(i, 0)]));
            row.push(fmt_f64(p[(i, 1)]));
        }
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn save_csv(cloud: &PointCloud, path: impl AsRef<Path>) -> Result<()> {
    let file = File::create(path)?;
    write_csv(cloud, BufWriter::new(file))
}

/// Parses the format written by [`write_csv`]. Lines starting with `#` are
/// ignored.
pub fn read_csv<R: Read>(reader: R) -> Result<PointCloud> {
    let mut r = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header = r.headers().map_err(csv_err)?.clone();
    if header.is_empty() {
        return Err(LleError::NoRows);
    }
    let names: Vec<&str> = header.iter().collect();
    let has_params = names.len() >= 2 && names[names.len() - 2..] == ["s", "h"];
    let dim = if has_params { names.len() - 2 } else { names.len() };
    for (j, name) in names[..dim].iter().enumerate() {
        if *name != format!("x{}", j + 1) {
            return Err(LleError::Parse {
                line: 1,
                message: format!("unexpected column name '{name}'"),
            });
        }
    }
    if dim == 0 {
        return Err(LleError::Parse { line: 1, message: "no coordinate columns".into() });
    }

    let mut coords = Vec::new();
    let mut params = Vec::new();
    let mut n = 0usize;
    for record in r.records() {
        let record = record.map_err(csv_err)?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        for (j, field) in record.iter().enumerate() {
            let v: f64 = field.parse().map_err(|_| LleError::Parse {
                line,
                message: format!("invalid number '{field}'"),
            })?;
            if j < dim {
                coords.push(v);
            } else {
                params.push(v);
            }
        }
        n += 1;
    }
    if n == 0 {
        return Err(LleError::NoRows);
    }
    let points = DMatrix::from_column_slice(dim, n, &coords);
    let params = has_params.then(|| DMatrix::from_row_slice(n, 2, &params));
    PointCloud::new(points, params, 0)
}

pub fn load_csv(path: impl AsRef<Path>) -> Result<PointCloud> {
    let file = File::open(path)?;
    read_csv(BufReader::new(file))
}

/// Writes a `d x N` coordinate matrix as `N` rows with columns `y1..yd`,
/// preceded by `# key=value` metadata lines.
pub fn write_coordinates_csv<W: Write>(y: &DMatrix<f64>, metadata: &[(String, String)], mut writer: W) -> Result<()> {
    for (key, value) in metadata {
        writeln!(writer, "# {key}={value}")?;
    }
    let mut w = csv::Writer::from_writer(writer);
    let header: Vec<String> = (1..=y.nrows()).map(|j| format!("y{j}")).collect();
    w.write_record(&header).map_err(csv_err)?;
    for col in y.column_iter() {
        w.write_record(col.iter().map(|v| fmt_f64(*v))).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads coordinates written by [`write_coordinates_csv`] back into a
/// `d x N` matrix together with their metadata.
pub fn read_coordinates_csv<R: Read>(reader: R) -> Result<(DMatrix<f64>, Vec<(String, String)>)> {
    let mut text = String::new();
    BufReader::new(reader).read_to_string(&mut text)?;
    let metadata = text
        .lines()
        .filter_map(|l| l.strip_prefix('#'))
        .filter_map(|l| l.trim().split_once('='))
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .collect();
    let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).trim(csv::Trim::All).from_reader(text.as_bytes());
    let d = r.headers().map_err(csv_err)?.len();
    let mut values = Vec::new();
    for record in r.records() {
        let record = record.map_err(csv_err)?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        for field in record.iter() {
            values.push(field.parse::<f64>().map_err(|_| LleError::Parse {
                line,
                message: format!("invalid number '{field}'"),
            })?);
        }
    }
    if d == 0 || values.is_empty() {
        return Err(LleError::NoRows);
    }
    Ok((DMatrix::from_column_slice(d, values.len() / d, &values), metadata))
}
