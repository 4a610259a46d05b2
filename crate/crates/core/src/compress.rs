//! Total-degree compression of solution sets.
//!
//! Each solution of `F` is tracked backwards to a start solution of the
//! total-degree system and recorded as one bit at its Bézout index. Given
//! `F`, `γ` and the bitmask, the solutions are recovered by tracking only
//! the marked start solutions forward.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homotopy::Homotopy;
use crate::lazy::{Bitmask, ResultIterator, StartSolutions};
use crate::polysys::{PolySystem, SystemJson};
use crate::startsys::{bezout_index, bezout_number, total_degree_system};
use crate::tracker::{track, TrackOptions};
use crate::C64;

pub const MAGIC: &[u8; 4] = b"HCIT";
pub const FORMAT_VERSION: u8 = 1;

/// Residual bound for accepting an input as a zero of `F`.
const INPUT_TOLERANCE: f64 = 1e-6;

/// A solution set stored as a bitmask over total-degree start solutions.
#[derive(Clone, Debug, PartialEq)]
pub struct CompressedSolutions {
    pub system: PolySystem,
    pub gamma: C64,
    pub degrees: Vec<u32>,
    pub bitmask: Bitmask,
}

impl CompressedSolutions {
    pub fn popcount(&self) -> usize {
        self.bitmask.count_ones()
    }
}

fn check_degrees(system: &PolySystem) -> Result<Vec<u32>> {
    if system.is_parameterized() {
        return Err(Error::Shape(
            "cannot compress against a parameterized system".into(),
        ));
    }
    let degrees = system.degrees();
    if degrees.contains(&0) {
        return Err(Error::Shape("every polynomial needs degree >= 1".into()));
    }
    Ok(degrees)
}

/// The forward homotopy shared by compression and decompression.
fn forward_homotopy(system: &PolySystem, degrees: &[u32], gamma: C64) -> Result<Homotopy> {
    Homotopy::straight_line(system.clone(), total_degree_system(degrees, gamma)?, gamma)
}

/// Compresses `solutions` of `f`, holding one solution at a time.
pub fn compress(
    f: &PolySystem,
    solutions: impl IntoIterator<Item = Vec<C64>>,
    gamma: C64,
    options: &TrackOptions,
) -> Result<CompressedSolutions> {
    options.validate()?;
    if gamma == C64::new(0.0, 0.0) {
        return Err(Error::InvalidArgument("gamma must be nonzero".into()));
    }
    let degrees = check_degrees(f)?;
    let n = usize::try_from(bezout_number(&degrees))
        .map_err(|_| Error::Compression("Bézout number does not fit in memory".into()))?;
    // Runs the forward homotopy backwards: H(x, 1 - s) for s from 1 to 0.
    let g = total_degree_system(&degrees, gamma)?.scale(gamma);
    let reverse = Homotopy::straight_line(g, f.clone(), C64::new(1.0, 0.0))?;

    let mut bitmask = Bitmask::zeros(n);
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for (k, z) in solutions.into_iter().enumerate() {
        let residual = crate::linalg::norm2(&f.evaluate(&z, None)?);
        if residual >= INPUT_TOLERANCE * (1.0 + crate::linalg::norm2(&z)) {
            return Err(Error::Compression(format!(
                "input {k} is not a zero of the system (residual {residual:e})"
            )));
        }
        let r = track(&reverse, &z, options);
        if !r.is_success() {
            return Err(Error::Compression(format!(
                "input {k} failed to reverse-track: {} at t = {}",
                r.status, r.t_reached
            )));
        }
        let idx = bezout_index(&r.solution, &degrees)
            .map_err(|e| Error::Compression(format!("input {k}: {e}")))?;
        let slot = (idx - 1) as usize;
        if let Some(prev) = owner[slot] {
            return Err(Error::Compression(format!(
                "inputs {prev} and {k} both map to Bézout index {idx}; retry with another gamma"
            )));
        }
        owner[slot] = Some(k);
        bitmask.set(slot, true);
    }
    Ok(CompressedSolutions {
        system: f.clone(),
        gamma,
        degrees,
        bitmask,
    })
}

/// Recovers the compressed solutions lazily.
pub fn decompress(c: &CompressedSolutions, options: TrackOptions) -> Result<ResultIterator> {
    let h = forward_homotopy(&c.system, &c.degrees, c.gamma)?;
    ResultIterator::new(h, StartSolutions::total_degree(c.degrees.clone())?, options)?
        .with_bitmask(c.bitmask.clone())
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Header {
    system: SystemJson,
    gamma: [f64; 2],
    degrees: Vec<u32>,
}

/// Writes the `HCIT` archive.
pub fn write_compressed(c: &CompressedSolutions, mut sink: impl Write) -> Result<()> {
    let header = Header {
        system: c.system.to_json_value(),
        gamma: [c.gamma.re, c.gamma.im],
        degrees: c.degrees.clone(),
    };
    let json = serde_json::to_vec(&header).map_err(|e| Error::Format(e.to_string()))?;
    let len = u32::try_from(json.len()).map_err(|_| Error::Format("header too large".into()))?;
    sink.write_all(MAGIC)?;
    sink.write_all(&[FORMAT_VERSION])?;
    sink.write_all(&len.to_le_bytes())?;
    sink.write_all(&json)?;
    sink.write_all(c.bitmask.as_bytes())?;
    sink.flush()?;
    Ok(())
}

fn read_exact(source: &mut impl Read, buf: &mut [u8], what: &str) -> Result<()> {
    source.read_exact(buf).map_err(|e| match e.kind() {
        std::io::ErrorKind::UnexpectedEof => Error::Format(format!("truncated {what}")),
        _ => Error::Io(e),
    })
}

/// Reads an `HCIT` archive, rejecting truncated or over-long input.
pub fn read_compressed(mut source: impl Read) -> Result<CompressedSolutions> {
    let mut magic = [0u8; 4];
    read_exact(&mut source, &mut magic, "magic")?;
    if &magic != MAGIC {
        return Err(Error::Format("bad magic".into()));
    }
    let mut version = [0u8; 1];
    read_exact(&mut source, &mut version, "version")?;
    if version[0] != FORMAT_VERSION {
        return Err(Error::Format(format!("unsupported version {}", version[0])));
    }
    let mut len = [0u8; 4];
    read_exact(&mut source, &mut len, "header length")?;
    let mut json = vec![0u8; u32::from_le_bytes(len) as usize];
    read_exact(&mut source, &mut json, "header")?;
    let header: Header =
        serde_json::from_slice(&json).map_err(|e| Error::Format(format!("header: {e}")))?;
    let system = header.system.into_system()?;
    let gamma = C64::new(header.gamma[0], header.gamma[1]);
    if gamma == C64::new(0.0, 0.0) || !gamma.is_finite() {
        return Err(Error::Format("gamma must be finite and nonzero".into()));
    }
    if header.degrees != system.degrees() {
        return Err(Error::Format("degrees do not match the system".into()));
    }
    let n = usize::try_from(bezout_number(&header.degrees))
        .map_err(|_| Error::Format("bitmask too large".into()))?;
    let mut bytes = vec![0u8; n.div_ceil(8)];
    read_exact(&mut source, &mut bytes, "bitmask")?;
    let mut rest = Vec::new();
    source.read_to_end(&mut rest)?;
    if !rest.is_empty() {
        return Err(Error::Format(format!("{} trailing bytes", rest.len())));
    }
    Ok(CompressedSolutions {
        system,
        gamma,
        degrees: header.degrees,
        bitmask: Bitmask::from_bytes(&bytes, n)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lazy::{count, solve_iter, StartKind};
    use crate::linalg::distance;

    fn intro() -> PolySystem {
        PolySystem::parse(
            r#"{"variables":["x","y"],"polynomials":[
                [{"c":[1,0],"e":[2,0]},{"c":[1,0],"e":[0,1]},{"c":[-1,0],"e":[0,0]}],
                [{"c":[1,0],"e":[2,0]},{"c":[1,0],"e":[0,2]},{"c":[-4,0],"e":[0,0]}]
            ]}"#,
        )
        .unwrap()
    }

    // y^2 - y - 3 = 0 after eliminating x^2 = 1 - y.
    fn intro_oracle() -> Vec<Vec<C64>> {
        let s = 13f64.sqrt();
        let mut out = Vec::new();
        for y in [(1.0 + s) / 2.0, (1.0 - s) / 2.0] {
            let x = C64::new(1.0 - y, 0.0).sqrt();
            for x in [x, -x] {
                out.push(vec![x, C64::new(y, 0.0)]);
            }
        }
        out
    }

    fn matches(a: &[Vec<C64>], b: &[Vec<C64>], tol: f64) -> bool {
        a.len() == b.len()
            && a.iter().all(|u| b.iter().any(|v| distance(u, v) < tol))
            && b.iter().all(|v| a.iter().any(|u| distance(u, v) < tol))
    }

    fn gamma() -> C64 {
        C64::from_polar(1.0, 0.7)
    }

    #[test]
    fn intro_round_trip() {
        let f = intro();
        let sols = intro_oracle();
        for g in [
            gamma(),
            C64::from_polar(1.0, 2.9),
            C64::from_polar(1.0, 5.1),
        ] {
            let c = compress(&f, sols.clone(), g, &TrackOptions::default()).unwrap();
            assert_eq!(c.bitmask.len(), 4);
            assert_eq!(c.popcount(), 4);
            let back: Vec<_> = decompress(&c, TrackOptions::default())
                .unwrap()
                .solutions()
                .collect();
            assert!(matches(&back, &sols, 1e-6));
        }
    }

    #[test]
    fn real_subset() {
        let f = intro();
        let real: Vec<_> = intro_oracle()
            .into_iter()
            .filter(|z| z[0].im.abs() < 1e-12)
            .collect();
        assert_eq!(real.len(), 2);
        let c = compress(&f, real.clone(), gamma(), &TrackOptions::default()).unwrap();
        assert_eq!(c.popcount(), 2);
        let it = decompress(&c, TrackOptions::default()).unwrap();
        let back: Vec<_> = it.solutions().collect();
        assert!(matches(&back, &real, 1e-6));
        assert_eq!(it.instrumentation().paths_tracked(), 2);
    }

    #[test]
    fn degree_two_one() {
        let f = PolySystem::parse(
            r#"{"variables":["x","y"],"polynomials":[
                [{"c":[1,0],"e":[2,0]},{"c":[-1,0],"e":[0,0]}],
                [{"c":[1,0],"e":[0,1]},{"c":[-1,0],"e":[1,0]}]
            ]}"#,
        )
        .unwrap();
        let sols = vec![
            vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)],
            vec![C64::new(-1.0, 0.0), C64::new(-1.0, 0.0)],
        ];
        let c = compress(&f, sols.clone(), gamma(), &TrackOptions::default()).unwrap();
        assert_eq!((c.bitmask.len(), c.popcount()), (2, 2));
        let back: Vec<_> = decompress(&c, TrackOptions::default())
            .unwrap()
            .solutions()
            .collect();
        assert!(matches(&back, &sols, 1e-6));
    }

    #[test]
    fn empty_mask_tracks_nothing() {
        let c = compress(&intro(), Vec::new(), gamma(), &TrackOptions::default()).unwrap();
        let it = decompress(&c, TrackOptions::default()).unwrap();
        assert_eq!(count(&it), 0);
        assert_eq!(it.instrumentation().paths_tracked(), 0);
    }

    #[test]
    fn duplicate_inputs_collide() {
        let s = intro_oracle();
        let err = compress(
            &intro(),
            vec![s[0].clone(), s[0].clone()],
            gamma(),
            &TrackOptions::default(),
        )
        .unwrap_err();
        assert!(err.to_string().contains("inputs 0 and 1"), "{err}");
    }

    #[test]
    fn non_solution_is_rejected() {
        let bad = vec![vec![C64::new(3.0, 0.0), C64::new(3.0, 0.0)]];
        assert!(compress(&intro(), bad, gamma(), &TrackOptions::default()).is_err());
        assert!(compress(
            &intro(),
            Vec::new(),
            C64::new(0.0, 0.0),
            &TrackOptions::default()
        )
        .is_err());
    }

    #[test]
    fn solve_then_compress() {
        let f = intro();
        let it = solve_iter(
            &f,
            StartKind::TotalDegree { gamma: gamma() },
            TrackOptions::default(),
        )
        .unwrap();
        let sols: Vec<_> = it.solutions().collect();
        let c = compress(
            &f,
            sols.iter().cloned(),
            C64::from_polar(1.0, 4.0),
            &TrackOptions::default(),
        )
        .unwrap();
        assert_eq!(c.popcount(), 4);
    }

    fn archive() -> CompressedSolutions {
        let real: Vec<_> = intro_oracle()
            .into_iter()
            .filter(|z| z[0].im.abs() < 1e-12)
            .collect();
        compress(&intro(), real, gamma(), &TrackOptions::default()).unwrap()
    }

    #[test]
    fn codec_round_trip() {
        let c = archive();
        let mut buf = Vec::new();
        write_compressed(&c, &mut buf).unwrap();
        assert_eq!(&buf[..4], b"HCIT");
        assert_eq!(buf[4], 1);
        let hlen = u32::from_le_bytes(buf[5..9].try_into().unwrap()) as usize;
        assert_eq!(buf.len(), 9 + hlen + 1);
        let back = read_compressed(buf.as_slice()).unwrap();
        assert_eq!(back, c);
        let mut again = Vec::new();
        write_compressed(&back, &mut again).unwrap();
        assert_eq!(again, buf);
    }

    #[test]
    fn codec_rejects_damage() {
        let mut buf = Vec::new();
        write_compressed(&archive(), &mut buf).unwrap();
        assert!(read_compressed(&buf[..buf.len() - 1]).is_err());
        let mut long = buf.clone();
        long.push(0);
        assert!(read_compressed(long.as_slice()).is_err());
        let mut magic = buf.clone();
        magic[0] = b'X';
        assert!(read_compressed(magic.as_slice()).is_err());
        let mut version = buf.clone();
        version[4] = 2;
        assert!(read_compressed(version.as_slice()).is_err());
        let mut padding = buf.clone();
        *padding.last_mut().unwrap() |= 0x80;
        assert!(read_compressed(padding.as_slice()).is_err());
        assert!(read_compressed(&buf[..3]).is_err());
    }

    #[test]
    fn bitmask_size_for_large_bezout_number() {
        // 27072 start solutions need 3384 bytes.
        assert_eq!(27072usize.div_ceil(8), 3384);
        let m = Bitmask::zeros(27072);
        assert_eq!(m.as_bytes().len(), 3384);
        assert!((27072.0 / 1024.0 - 26.4375f64).abs() < 1e-12);
    }
}
