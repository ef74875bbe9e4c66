//! Choice-data files.
//!
//! Two CSV layouts, both UTF-8 with a header row and RFC-style quoting:
//!
//! - long: `menu,choice` with one row per observation and menus written as
//!   `;`-joined labels (`a;b;c,b`);
//! - counts: `menu,alternative,count` with aggregated counts.
//!
//! The alphabet is inferred from the file: the sorted set of labels appearing
//! in menu cells.

use std::collections::BTreeSet;
use std::io::{Read, Write};
use std::path::Path;

use crate::core::alphabet::{canonical_menu, Alphabet, Menu};
use crate::error::{Error, Result};
use crate::io::parse::split_menu_labels;
use crate::models::Dataset;

/// File layout of a dataset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DatasetFormat {
    Long,
    Counts,
}

impl std::str::FromStr for DatasetFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<DatasetFormat> {
        match s.to_ascii_lowercase().as_str() {
            "long" => Ok(DatasetFormat::Long),
            "counts" => Ok(DatasetFormat::Counts),
            other => Err(Error::ParseError {
                line: 0,
                msg: format!("unknown dataset format `{other}`"),
            }),
        }
    }
}

/// A dataset together with the alphabet inferred from its file.
#[derive(Clone, Debug)]
pub struct LoadedDataset {
    pub alphabet: Alphabet,
    pub dataset: Dataset,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::ParseError {
        line,
        msg: msg.into(),
    }
}

fn read_rows(
    reader: impl Read,
    expected_header: &[&str],
) -> Result<Vec<(usize, Vec<String>)>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| parse_err(1, e.to_string()))?
        .clone();
    let got: Vec<String> = headers
        .iter()
        .map(|h| h.trim().to_ascii_lowercase())
        .collect();
    if got != expected_header {
        return Err(parse_err(
            1,
            format!(
                "expected header `{}`, found `{}`",
                expected_header.join(","),
                got.join(",")
            ),
        ));
    }
    let mut rows = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            parse_err(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.iter().all(|f| f.trim().is_empty()) {
            continue;
        }
        if record.len() != expected_header.len() {
            return Err(parse_err(
                line,
                format!(
                    "expected {} fields, found {}",
                    expected_header.len(),
                    record.len()
                ),
            ));
        }
        rows.push((line, record.iter().map(|f| f.to_string()).collect()));
    }
    if rows.is_empty() {
        return Err(Error::EmptyFile);
    }
    Ok(rows)
}

fn infer_alphabet(menu_cells: &[(usize, &str)]) -> Result<Alphabet> {
    let mut labels = BTreeSet::new();
    for &(line, cell) in menu_cells {
        let parsed =
            split_menu_labels(cell).map_err(|_| parse_err(line, format!("bad menu `{cell}`")))?;
        labels.extend(parsed);
    }
    Alphabet::new(labels)
}

/// Load a dataset from a reader.
pub fn load_dataset_from(reader: impl Read, format: DatasetFormat) -> Result<LoadedDataset> {
    match format {
        DatasetFormat::Long => {
            let rows = read_rows(reader, &["menu", "choice"])?;
            let cells: Vec<(usize, &str)> =
                rows.iter().map(|(l, r)| (*l, r[0].as_str())).collect();
            let alphabet = infer_alphabet(&cells)?;
            let mut observations = Vec::with_capacity(rows.len());
            for (line, row) in &rows {
                let labels = split_menu_labels(&row[0])
                    .map_err(|_| parse_err(*line, format!("bad menu `{}`", row[0])))?;
                let menu = canonical_menu(&labels, &alphabet)
                    .map_err(|e| parse_err(*line, e.to_string()))?;
                let choice = row[1].trim();
                let alt = alphabet.index_of(choice).map_err(|_| Error::ChoiceNotInMenu {
                    line: *line,
                    choice: choice.to_string(),
                })?;
                if !menu.contains(alt) {
                    return Err(Error::ChoiceNotInMenu {
                        line: *line,
                        choice: choice.to_string(),
                    });
                }
                observations.push((menu, alt));
            }
            Ok(LoadedDataset {
                alphabet,
                dataset: Dataset::new(observations)?,
            })
        }
        DatasetFormat::Counts => {
            let rows = read_rows(reader, &["menu", "alternative", "count"])?;
            let cells: Vec<(usize, &str)> =
                rows.iter().map(|(l, r)| (*l, r[0].as_str())).collect();
            let alphabet = infer_alphabet(&cells)?;
            let mut observations = Vec::new();
            for (line, row) in &rows {
                let labels = split_menu_labels(&row[0])
                    .map_err(|_| parse_err(*line, format!("bad menu `{}`", row[0])))?;
                let menu = canonical_menu(&labels, &alphabet)
                    .map_err(|e| parse_err(*line, e.to_string()))?;
                let choice = row[1].trim();
                let alt = alphabet.index_of(choice).map_err(|_| Error::ChoiceNotInMenu {
                    line: *line,
                    choice: choice.to_string(),
                })?;
                if !menu.contains(alt) {
                    return Err(Error::ChoiceNotInMenu {
                        line: *line,
                        choice: choice.to_string(),
                    });
                }
                let count: u64 = row[2]
                    .trim()
                    .parse()
                    .map_err(|_| parse_err(*line, format!("bad count `{}`", row[2])))?;
                if observations.len() as u64 + count > 50_000_000 {
                    return Err(parse_err(*line, "dataset too large"));
                }
                for _ in 0..count {
                    observations.push((menu, alt));
                }
            }
            Ok(LoadedDataset {
                alphabet,
                dataset: Dataset::new(observations)?,
            })
        }
    }
}

/// Load a dataset from a file path.
pub fn load_dataset(path: impl AsRef<Path>, format: DatasetFormat) -> Result<LoadedDataset> {
    let file = std::fs::File::open(path)?;
    load_dataset_from(file, format)
}

/// Write a dataset. Long format preserves observation order; counts format
/// aggregates by menu and alternative in canonical order.
pub fn write_dataset_to(
    writer: impl Write,
    alphabet: &Alphabet,
    dataset: &Dataset,
    format: DatasetFormat,
) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    let render = |menu: Menu| alphabet.render(menu.mask());
    match format {
        DatasetFormat::Long => {
            wtr.write_record(["menu", "choice"])
                .map_err(|e| parse_err(0, e.to_string()))?;
            for &(menu, alt) in dataset.observations() {
                wtr.write_record([render(menu), alphabet.label(alt).to_string()])
                    .map_err(|e| parse_err(0, e.to_string()))?;
            }
        }
        DatasetFormat::Counts => {
            wtr.write_record(["menu", "alternative", "count"])
                .map_err(|e| parse_err(0, e.to_string()))?;
            for (menu, counts) in dataset.counts() {
                for (rank, alt) in menu.iter().enumerate() {
                    if counts[rank] > 0 {
                        wtr.write_record([
                            render(menu),
                            alphabet.label(alt).to_string(),
                            counts[rank].to_string(),
                        ])
                        .map_err(|e| parse_err(0, e.to_string()))?;
                    }
                }
            }
        }
    }
    wtr.flush()?;
    Ok(())
}

/// Write a dataset to a file path.
pub fn write_dataset(
    path: impl AsRef<Path>,
    alphabet: &Alphabet,
    dataset: &Dataset,
    format: DatasetFormat,
) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_dataset_to(file, alphabet, dataset, format)
}
