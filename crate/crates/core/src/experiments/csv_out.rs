use std::io::Write;

use crate::error::Result;

/// Header plus one row per item; floats use the shortest text that parses
/// back to the same value.
pub(crate) fn write_rows<W: Write, const N: usize>(
    out: W,
    header: [&str; N],
    rows: impl IntoIterator<Item = [String; N]>,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}
