use std::fs::File;
use std::io::{self, Write};

use serde::Serialize;
use seqpriv::Result;

use crate::{Format, OutputArgs};

/// Writes `value` as JSON or `rows` as CSV, to `--out` or standard output.
/// Does nothing when neither `--out` nor `--format` was given.
pub fn emit<T: Serialize, R: Serialize>(args: &OutputArgs, value: &T, rows: Option<(&[&str], &[R])>) -> Result<()> {
    let format = match (args.format, &args.out) {
        (None, None) => return Ok(()),
        (Some(f), _) => f,
        (None, Some(_)) => {
            if rows.is_some() {
                Format::Csv
            } else {
                Format::Json
            }
        }
    };
    let sink: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout()),
    };
    match (format, rows) {
        (Format::Csv, Some((header, rows))) => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(sink);
            w.write_record(header).map_err(io::Error::from)?;
            for r in rows {
                w.serialize(r).map_err(io::Error::from)?;
            }
            w.flush()?;
        }
        (Format::Csv, None) => {
            return Err(seqpriv::Error::Config("this command has no CSV form; use --format json".into()))
        }
        (Format::Json, _) => {
            let mut sink = sink;
            serde_json::to_writer_pretty(&mut sink, value).map_err(io::Error::from)?;
            writeln!(sink)?;
        }
    }
    Ok(())
}

/// Whether the structured report replaces the text report on stdout.
pub fn structured_on_stdout(args: &OutputArgs) -> bool {
    args.format.is_some() && args.out.is_none()
}
