use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::{Capture, GameState, GameTrace, SimParams};
use crate::error::{Error, Result};

pub const TRACE_SCHEMA_VERSION: u32 = 1;

/// Column order shared by the CSV header and each JSON sample row.
pub const TRACE_CSV_HEADER: [&str; 9] = ["t", "ex", "ey", "p1x", "p1y", "p2x", "p2y", "p3x", "p3y"];

#[derive(Serialize, Deserialize)]
struct TraceJson {
    schema_version: u32,
    params: SimParams,
    columns: Vec<String>,
    samples: Vec<[f64; 9]>,
    capture: Capture,
}

pub fn write_trace_json<W: Write>(trace: &GameTrace, mut out: W) -> Result<()> {
    let doc = TraceJson {
        schema_version: TRACE_SCHEMA_VERSION,
        params: trace.params,
        columns: TRACE_CSV_HEADER.iter().map(|s| s.to_string()).collect(),
        samples: trace.samples.iter().map(GameState::to_row).collect(),
        capture: trace.capture,
    };
    serde_json::to_writer_pretty(&mut out, &doc)?;
    out.flush()?;
    Ok(())
}

pub fn read_trace_json<R: Read>(input: R) -> Result<GameTrace> {
    let doc: TraceJson = serde_json::from_reader(input)?;
    if doc.schema_version != TRACE_SCHEMA_VERSION {
        return Err(Error::InvalidParameter(format!("unsupported trace schema version {}", doc.schema_version)));
    }
    Ok(GameTrace {
        params: doc.params,
        samples: doc.samples.into_iter().map(GameState::from_row).collect(),
        capture: doc.capture,
    })
}

pub fn write_trace_csv<W: Write>(trace: &GameTrace, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TRACE_CSV_HEADER)?;
    for s in &trace.samples {
        w.write_record(s.to_row().iter().map(|v| v.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::run_game;
    use crate::fixtures;
    use crate::strategies::{DTeam, EStrategyEvader};

    fn trace() -> GameTrace {
        let p = fixtures::equilateral();
        let params = SimParams::new(1e-2, 2e-2, 4.0).unwrap();
        run_game(&p, &mut EStrategyEvader::new(), &mut DTeam::d_strategy(), &params).unwrap()
    }

    #[test]
    fn json_roundtrip_is_exact() {
        let tr = trace();
        let mut buf = Vec::new();
        write_trace_json(&tr, &mut buf).unwrap();
        let back = read_trace_json(buf.as_slice()).unwrap();
        assert_eq!(back, tr);
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["samples"][0].as_array().unwrap().len(), 9);
    }

    #[test]
    fn csv_header_and_rows() {
        let tr = trace();
        let mut buf = Vec::new();
        write_trace_csv(&tr, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "t,ex,ey,p1x,p1y,p2x,p2y,p3x,p3y");
        assert_eq!(lines.count(), tr.samples.len());
    }
}
