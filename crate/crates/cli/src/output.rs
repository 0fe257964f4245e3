use std::fs::File;
use std::io::{self, BufWriter, Write};

use diraccomb::QuadratureConfig;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{Format, OutputArgs};
use crate::error::CliError;

/// A finished run: metadata plus rows that serialize either as CSV records
/// or as a JSON array.
pub struct Report<'a, R: Serialize> {
    pub command: &'a str,
    pub parameters: Value,
    pub tolerances: QuadratureConfig,
    pub rows: &'a [R],
    /// Additional top-level JSON member; not written to CSV.
    pub extra: Option<(&'a str, Value)>,
}

impl<R: Serialize> Report<'_, R> {
    pub fn write(&self, out: &OutputArgs) -> Result<(), CliError> {
        let sink: Box<dyn Write> = match &out.output {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        };
        match out.format {
            Format::Csv => self.write_csv(sink),
            Format::Json => self.write_json(sink),
        }
    }

    fn write_csv(&self, sink: Box<dyn Write>) -> Result<(), CliError> {
        let mut w = csv::Writer::from_writer(sink);
        for row in self.rows {
            w.serialize(row)?;
        }
        w.flush()?;
        Ok(())
    }

    fn write_json(&self, mut sink: Box<dyn Write>) -> Result<(), CliError> {
        let mut doc = json!({
            "command": self.command,
            "version": env!("CARGO_PKG_VERSION"),
            "library_version": diraccomb::VERSION,
            "parameters": self.parameters,
            "tolerances": self.tolerances,
            "results": self.rows,
        });
        if let Some((key, value)) = &self.extra {
            doc[*key] = value.clone();
        }
        serde_json::to_writer_pretty(&mut sink, &doc)?;
        writeln!(sink)?;
        sink.flush()?;
        Ok(())
    }
}
