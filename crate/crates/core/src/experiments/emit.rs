// Copyright 2026 The icgate Authors
// SPDX-License-Identifier: Apache-2.0

//! CSV helpers. Floats use the shortest round-trip `Debug` form, so
//! identical inputs give byte-identical files.

use crate::error::{Error, Result};

/// Writes equal-length columns under `headers`, rows in index order.
pub fn csv_columns(headers: &[&str], columns: &[&[f64]]) -> Result<String> {
    if headers.len() != columns.len() {
        return Err(Error::InvalidArgument(format!("{} headers for {} columns", headers.len(), columns.len())));
    }
    let rows = columns.first().map_or(0, |c| c.len());
    if columns.iter().any(|c| c.len() != rows) {
        return Err(Error::InvalidArgument("columns differ in length".into()));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(headers).map_err(csv_err)?;
    for r in 0..rows {
        w.write_record(columns.iter().map(|c| format!("{:?}", c[r]))).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("CSV of ASCII floats is UTF-8"))
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout() {
        let out = csv_columns(&["a", "b"], &[&[1.0, 0.5], &[-2.0, 1e-20]]).unwrap();
        assert_eq!(out, "a,b\n1.0,-2.0\n0.5,1e-20\n");
        assert!(csv_columns(&["a"], &[&[1.0], &[2.0]]).is_err());
    }
}
