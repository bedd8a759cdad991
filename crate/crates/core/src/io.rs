//! Point stream readers.
//!
//! CSV: one point per line, comma-separated decimals; lines starting with `#`
//! and blank lines are skipped. JSONL: one JSON array of numbers per line.
//! The first record fixes the dimension; any later record with a different
//! length is an error carrying its line number.

use std::io::BufRead;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geometry::Point;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Jsonl,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "jsonl" => Ok(Format::Jsonl),
            other => Err(Error::Parse {
                line: 0,
                message: format!("unknown format {other:?}"),
            }),
        }
    }
}

/// Parses `"x1,x2,..."` into a point.
pub fn parse_csv_point(text: &str) -> std::result::Result<Point, String> {
    let coords = text
        .split(',')
        .map(|field| {
            let field = field.trim();
            field
                .parse::<f64>()
                .map_err(|_| format!("not a number: {field:?}"))
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Point::new(coords).map_err(|e| e.to_string())
}

fn parse_json_point(text: &str) -> std::result::Result<Point, String> {
    let coords: Vec<f64> = serde_json::from_str(text).map_err(|e| e.to_string())?;
    Point::new(coords).map_err(|e| e.to_string())
}

/// Lazily yields the points of a stream in file order.
pub struct PointReader<R> {
    lines: std::io::Lines<R>,
    format: Format,
    line_no: usize,
    dim: Option<usize>,
    failed: bool,
}

impl<R: BufRead> PointReader<R> {
    pub fn new(reader: R, format: Format) -> Self {
        PointReader {
            lines: reader.lines(),
            format,
            line_no: 0,
            dim: None,
            failed: false,
        }
    }

    /// Dimension fixed by the first record, once one has been read.
    pub fn dim(&self) -> Option<usize> {
        self.dim
    }

    fn parse(&mut self, line: &str) -> Result<Point> {
        let parsed = match self.format {
            Format::Csv => parse_csv_point(line),
            Format::Jsonl => parse_json_point(line),
        };
        let p = parsed.map_err(|message| Error::Parse {
            line: self.line_no,
            message,
        })?;
        match self.dim {
            None => self.dim = Some(p.dim()),
            Some(expected) if expected != p.dim() => {
                return Err(Error::DimensionDrift {
                    line: self.line_no,
                    expected,
                    found: p.dim(),
                })
            }
            Some(_) => {}
        }
        Ok(p)
    }
}

impl<R: BufRead> Iterator for PointReader<R> {
    type Item = Result<Point>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        loop {
            let line = match self.lines.next()? {
                Ok(line) => line,
                Err(e) => {
                    self.failed = true;
                    return Some(Err(e.into()));
                }
            };
            self.line_no += 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || (self.format == Format::Csv && trimmed.starts_with('#')) {
                continue;
            }
            let item = self.parse(trimmed);
            self.failed = item.is_err();
            return Some(item);
        }
    }
}

/// Reads a whole stream into memory.
pub fn read_points<R: BufRead>(reader: R, format: Format) -> Result<Vec<Point>> {
    PointReader::new(reader, format).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: &[f64]) -> Point {
        Point::new(c.to_vec()).unwrap()
    }

    #[test]
    fn csv_basic() {
        let pts = read_points("0,0,0\n2,0,0\n".as_bytes(), Format::Csv).unwrap();
        assert_eq!(pts, vec![pt(&[0., 0., 0.]), pt(&[2., 0., 0.])]);
        let pts = read_points("# comment\n1.5\n".as_bytes(), Format::Csv).unwrap();
        assert_eq!(pts, vec![pt(&[1.5])]);
        let pts = read_points("\n 1e3 , -2 \n\n".as_bytes(), Format::Csv).unwrap();
        assert_eq!(pts, vec![pt(&[1000., -2.])]);
    }

    #[test]
    fn csv_errors_carry_line_numbers() {
        let err = read_points("1,2\n1,2,3\n".as_bytes(), Format::Csv).unwrap_err();
        assert!(matches!(
            err,
            Error::DimensionDrift {
                line: 2,
                expected: 2,
                found: 3
            }
        ));
        let err = read_points("# x\n1,2\n1,zz\n".as_bytes(), Format::Csv).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = read_points("nan\n".as_bytes(), Format::Csv).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn reader_stops_after_error() {
        let mut r = PointReader::new("1\nx\n2\n".as_bytes(), Format::Csv);
        assert!(r.next().unwrap().is_ok());
        assert!(r.next().unwrap().is_err());
        assert!(r.next().is_none());
    }

    #[test]
    fn jsonl() {
        let pts = read_points("[0, 1.5]\n[2,3]\n".as_bytes(), Format::Jsonl).unwrap();
        assert_eq!(pts, vec![pt(&[0., 1.5]), pt(&[2., 3.])]);
        let err = read_points("[1]\n[1,2]\n".as_bytes(), Format::Jsonl).unwrap_err();
        assert!(matches!(err, Error::DimensionDrift { line: 2, .. }));
        let err = read_points("{\"a\":1}\n".as_bytes(), Format::Jsonl).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn point_syntax() {
        assert_eq!(parse_csv_point("-1,0,0").unwrap(), pt(&[-1., 0., 0.]));
        assert!(parse_csv_point("").is_err());
        assert!(parse_csv_point("1,,2").is_err());
        assert_eq!("jsonl".parse::<Format>().unwrap(), Format::Jsonl);
        assert!("xml".parse::<Format>().is_err());
    }
}
