//! Point set readers (whitespace `x y` text and TSPLIB node coordinates) and
//! result writers (benchmark CSV and SVG renderings).

use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::geom::{Cover, Point};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("missing NODE_COORD_SECTION")]
    MissingCoordSection,
    #[error("DIMENSION is {declared} but {found} coordinate rows were read")]
    DimensionMismatch { declared: usize, found: usize },
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn line_err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Line {
        line,
        msg: msg.into(),
    }
}

fn parse_coord(tok: Option<&str>, line: usize) -> Result<f64, ParseError> {
    let tok = tok.ok_or_else(|| line_err(line, "expected two coordinates"))?;
    let v: f64 = tok
        .parse()
        .map_err(|_| line_err(line, format!("invalid number {tok:?}")))?;
    if !v.is_finite() {
        return Err(line_err(line, format!("non-finite coordinate {tok:?}")));
    }
    Ok(v)
}

/// One point per nonempty line as two whitespace-separated numbers. Lines
/// starting with `#` are comments.
pub fn read_xy<R: BufRead>(reader: R) -> Result<Vec<Point>, ParseError> {
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let mut it = t.split_whitespace();
        let x = parse_coord(it.next(), lineno)?;
        let y = parse_coord(it.next(), lineno)?;
        if it.next().is_some() {
            return Err(line_err(lineno, "expected exactly two coordinates"));
        }
        out.push(Point::new(x, y));
    }
    Ok(out)
}

/// Points of a TSPLIB file's `NODE_COORD_SECTION` (`index x y` rows), in file
/// order. Only the `DIMENSION` header is interpreted.
pub fn read_tsplib<R: BufRead>(reader: R) -> Result<Vec<Point>, ParseError> {
    let mut dimension: Option<usize> = None;
    let mut in_coords = false;
    let mut out = Vec::new();

    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        if t == "EOF" {
            break;
        }
        if !in_coords {
            if t.starts_with("NODE_COORD_SECTION") {
                in_coords = true;
                continue;
            }
            if let Some((key, value)) = t.split_once(':') {
                if key.trim() == "DIMENSION" {
                    let v = value.trim();
                    dimension = Some(
                        v.parse()
                            .map_err(|_| line_err(lineno, format!("invalid DIMENSION {v:?}")))?,
                    );
                }
            }
            continue;
        }
        let mut it = t.split_whitespace();
        it.next(); // node index
        let x = parse_coord(it.next(), lineno)?;
        let y = parse_coord(it.next(), lineno)?;
        out.push(Point::new(x, y));
    }

    if !in_coords {
        return Err(ParseError::MissingCoordSection);
    }
    if let Some(declared) = dimension {
        if declared != out.len() {
            return Err(ParseError::DimensionMismatch {
                declared,
                found: out.len(),
            });
        }
    }
    Ok(out)
}

/// Writes points one per line, in a form [`read_xy`] reads back exactly.
pub fn write_xy<W: Write>(points: &[Point], mut w: W) -> io::Result<()> {
    for p in points {
        writeln!(w, "{:?} {:?}", p.x, p.y)?;
    }
    w.flush()
}

/// Which rows of a benchmark run a record stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trial {
    Index(u32),
    Mean,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    pub algorithm: String,
    pub instance: String,
    pub n: usize,
    /// Integral for trial rows; the arithmetic mean for [`Trial::Mean`] rows.
    pub cover_size: f64,
    pub wall_time_s: f64,
    pub seed: u64,
    pub trial: Trial,
}

pub const CSV_HEADER: [&str; 7] = [
    "algorithm",
    "instance",
    "n",
    "cover_size",
    "wall_time_s",
    "seed",
    "trial",
];

pub fn write_csv<W: Write>(records: &[BenchRecord], w: W) -> csv::Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(CSV_HEADER)?;
    for r in records {
        let trial = match r.trial {
            Trial::Index(t) => t.to_string(),
            Trial::Mean => "mean".to_string(),
        };
        wr.write_record([
            r.algorithm.as_str(),
            r.instance.as_str(),
            &r.n.to_string(),
            &r.cover_size.to_string(),
            &format!("{:.6}", r.wall_time_s),
            &r.seed.to_string(),
            &trial,
        ])?;
    }
    wr.flush()?;
    Ok(())
}

#[derive(Clone, Debug)]
pub struct SvgOptions {
    /// Output pixels per plane unit.
    pub scale: f64,
    /// Dot radius in plane units.
    pub point_radius: f64,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            scale: 20.0,
            point_radius: 0.06,
        }
    }
}

/// Renders points as dots and each cover disk as a translucent unit circle.
/// The y axis points up; the view box encloses every point and disk with one
/// unit of margin.
pub fn write_svg<W: Write>(
    points: &[Point],
    cover: &Cover,
    mut w: W,
    opts: &SvgOptions,
) -> io::Result<()> {
    let mut bounds: Option<(f64, f64, f64, f64)> = None;
    let mut grow = |x0: f64, y0: f64, x1: f64, y1: f64| {
        bounds = Some(match bounds {
            None => (x0, y0, x1, y1),
            Some((a, b, c, d)) => (a.min(x0), b.min(y0), c.max(x1), d.max(y1)),
        });
    };
    for p in points {
        grow(p.x, p.y, p.x, p.y);
    }
    for c in cover {
        grow(c.x - 1.0, c.y - 1.0, c.x + 1.0, c.y + 1.0);
    }
    let (xmin, ymin, xmax, ymax) = match bounds {
        Some((a, b, c, d)) => (a - 1.0, b - 1.0, c + 1.0, d + 1.0),
        None => (0.0, 0.0, 1.0, 1.0),
    };
    let (width, height) = (xmax - xmin, ymax - ymin);

    writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="{:.0}" height="{:.0}">"#,
        xmin,
        -ymax,
        width,
        height,
        width * opts.scale,
        height * opts.scale
    )?;
    writeln!(
        w,
        "<style>.disk{{fill:#3b7dd8;fill-opacity:0.15;stroke:#1f4e8c;stroke-width:0.03}}.pt{{fill:#c0392b}}</style>"
    )?;
    for c in cover {
        writeln!(
            w,
            r#"<circle class="disk" cx="{}" cy="{}" r="1"/>"#,
            c.x, -c.y
        )?;
    }
    for p in points {
        writeln!(
            w,
            r#"<circle class="pt" cx="{}" cy="{}" r="{}"/>"#,
            p.x, -p.y, opts.point_radius
        )?;
    }
    writeln!(w, "</svg>")?;
    w.flush()
}
