//! Blind watermark embedding and extraction.
//!
//! One bit rides in each 4×4 block: the block is factored, and on one
//! imaginary plane the magnitudes of the first-column coefficients `u21`
//! and `u31` are re-centered so their gap carries the bit's sign — `+` for
//! 1, `−` for 0 — with magnitude at least the threshold `T`. The block is
//! rebuilt from the modified factor, the real plane dropped, channels
//! clamped. Extraction refactors the block and reads the gap's sign; no
//! host image or payload is needed (blind).
//!
//! The plane is chosen per block to minimize the applied modification, and
//! the gap magnitude (the *margin*) is inflated above every other plane
//! whose gap sign disagrees with the bit, plus a slack `epsilon_margin`,
//! so the extractor's argmax provably lands on a plane voting the right
//! way. In triple mode all three planes carry one bit each with margin
//! exactly `T` and the extractor reads every plane independently — no
//! argmax, no dominance inflation.
//!
//! Blocks are visited in the keyed pseudorandom order of
//! [`schedule::key_schedule`], which spreads payload bits over the image.

pub mod pairs;
pub mod schedule;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::image::bits::BitMatrix;
use crate::image::blocks::partition;
use crate::image::metrics::psnr;
use crate::image::{decode_quaternion, encode_quaternion, RgbImage};
use crate::qsvd::{qsvd, QsvdFactors};
use crate::quat::Quaternion;
use crate::QuatMat;

/// Imaginary-unit labels in component order.
pub const UNIT_NAMES: [char; 3] = ['i', 'j', 'k'];

/// Whether each block carries one adaptively-placed bit or three fixed ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Single,
    Triple,
}

/// Embedding parameters.
#[derive(Clone, Copy, Debug)]
pub struct EmbedConfig {
    /// Minimum magnitude gap between the modified coefficients.
    pub threshold: f64,
    pub mode: Mode,
    /// Extra gap demanded over wrong-signed competitor planes.
    pub epsilon_margin: f64,
}

impl EmbedConfig {
    /// Single-bit config with the default dominance slack `t / 10`.
    pub fn with_threshold(t: f64) -> Self {
        Self { threshold: t, mode: Mode::Single, epsilon_margin: t / 10.0 }
    }

    pub fn triple(mut self) -> Self {
        self.mode = Mode::Triple;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.threshold > 0.0) || !(self.epsilon_margin > 0.0) {
            return Err(Error::format("threshold and epsilon_margin must be positive"));
        }
        Ok(())
    }
}

impl Default for EmbedConfig {
    fn default() -> Self {
        Self::with_threshold(0.02)
    }
}

/// What one block embedding actually did.
#[derive(Clone, Debug)]
pub struct BlockEmbedRecord {
    pub block_row: usize,
    pub block_col: usize,
    /// Imaginary plane carrying the bit (0 = i, 1 = j, 2 = k).
    pub unit: usize,
    pub bit: bool,
    /// Magnitude gap written into the coefficient pair; `≥ threshold`.
    pub margin: f64,
    /// Signed change applied to the `u21` coefficient.
    pub delta1: f64,
    /// Signed change applied to the `u31` coefficient.
    pub delta2: f64,
}

/// Everything an embedding run reports back.
#[derive(Clone, Debug)]
pub struct EmbedReport {
    pub mode: Mode,
    pub threshold: f64,
    pub records: Vec<BlockEmbedRecord>,
    /// Blocks found unusable and skipped over (bit moved to the next one).
    pub skipped: Vec<(usize, usize)>,
    /// PSNR between host and watermarked image, in dB.
    pub psnr: f64,
}

impl EmbedReport {
    /// CSV: one row per record plus a trailing PSNR summary line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("block_r,block_c,unit,bit,margin,delta1,delta2\n");
        for r in &self.records {
            out.push_str(&format!(
                "{},{},{},{},{:.6e},{:.6e},{:.6e}\n",
                r.block_row,
                r.block_col,
                UNIT_NAMES[r.unit],
                r.bit as u8,
                r.margin,
                r.delta1,
                r.delta2
            ));
        }
        out.push_str(&format!("# psnr_db={:.6}\n", self.psnr));
        out
    }
}

#[inline]
fn component(q: Quaternion<f64>, unit: usize) -> f64 {
    match unit {
        0 => q.x,
        1 => q.y,
        _ => q.z,
    }
}

/// Sign with `sign(0) := +1`.
#[inline]
fn sign_of(v: f64) -> f64 {
    if v < 0.0 {
        -1.0
    } else {
        1.0
    }
}

/// Per-plane magnitude gaps `|u21| − |u31|` of a factorization.
fn gaps(f: &QsvdFactors<f64>) -> [f64; 3] {
    let u21 = f.u.get(1, 0);
    let u31 = f.u.get(2, 0);
    [
        u21.x.abs() - u31.x.abs(),
        u21.y.abs() - u31.y.abs(),
        u21.z.abs() - u31.z.abs(),
    ]
}

/// A block is unusable when `u21` or `u31` vanishes on every imaginary
/// plane — there is no sign structure to preserve.
fn unusable(f: &QsvdFactors<f64>) -> bool {
    let u21 = f.u.get(1, 0);
    let u31 = f.u.get(2, 0);
    let zero = |q: Quaternion<f64>| q.x == 0.0 && q.y == 0.0 && q.z == 0.0;
    zero(u21) || zero(u31)
}

/// Rewrites the chosen plane of `u21`/`u31` so their magnitude gap becomes
/// `desired · margin`, keeping their common level and signs.
fn write_pair(
    u: &mut QuatMat,
    unit: usize,
    desired: f64,
    margin: f64,
) -> (f64, f64) {
    let (mut u21, mut u31) = (u.get(1, 0), u.get(2, 0));
    let (c21, c31) = (component(u21, unit), component(u31, unit));
    let avg = (c21.abs() + c31.abs()) / 2.0;
    // Lift the common level when needed so both magnitudes stay
    // nonnegative and the gap still comes out exactly `desired · margin`.
    let level = avg.max(margin / 2.0);
    let new21 = sign_of(c21) * (level + desired * margin / 2.0);
    let new31 = sign_of(c31) * (level - desired * margin / 2.0);
    match unit {
        0 => {
            u21.x = new21;
            u31.x = new31;
        }
        1 => {
            u21.y = new21;
            u31.y = new31;
        }
        _ => {
            u21.z = new21;
            u31.z = new31;
        }
    }
    u.set(1, 0, u21);
    u.set(2, 0, u31);
    (new21 - c21, new31 - c31)
}

/// Margin needed on plane `unit` to dominate every other plane whose gap
/// sign disagrees with the bit.
fn required_margin(d: &[f64; 3], unit: usize, desired: f64, cfg: &EmbedConfig) -> f64 {
    let mut m = cfg.threshold;
    for (b, &gap) in d.iter().enumerate() {
        if b != unit && sign_of(gap) != desired {
            m = m.max(gap.abs() + cfg.epsilon_margin);
        }
    }
    m
}

/// Embeds one bit into a 4×4 pure block. Returns `None` for an unusable
/// block (the caller advances to the next scheduled block).
pub fn embed_block(
    block: &QuatMat,
    bit: bool,
    cfg: &EmbedConfig,
) -> Result<Option<(QuatMat, BlockEmbedRecord)>> {
    cfg.validate()?;
    let f = qsvd(block)?;
    if unusable(&f) {
        return Ok(None);
    }
    let d = gaps(&f);
    let desired = if bit { 1.0 } else { -1.0 };

    // Pick the plane needing the least modification; ties go to the lowest
    // plane index.
    let mut unit = 0;
    let mut best_cost = f64::INFINITY;
    let mut best_margin = 0.0;
    for a in 0..3 {
        let m = required_margin(&d, a, desired, cfg);
        let cost = (desired * m - d[a]).abs();
        if cost < best_cost {
            unit = a;
            best_cost = cost;
            best_margin = m;
        }
    }

    let mut u_star = f.u.clone();
    let (delta1, delta2) = write_pair(&mut u_star, unit, desired, best_margin);
    let rebuilt = u_star.mul(&f.sigma_as_quat())?.mul(&f.v.conj_transpose())?;
    Ok(Some((
        rebuilt,
        BlockEmbedRecord {
            block_row: 0,
            block_col: 0,
            unit,
            bit,
            margin: best_margin,
            delta1,
            delta2,
        },
    )))
}

/// Embeds three bits, one per imaginary plane, margin exactly the
/// threshold. Returns `None` for an unusable block.
pub fn embed_block_triple(
    block: &QuatMat,
    bits: [bool; 3],
    cfg: &EmbedConfig,
) -> Result<Option<(QuatMat, [BlockEmbedRecord; 3])>> {
    cfg.validate()?;
    let f = qsvd(block)?;
    if unusable(&f) {
        return Ok(None);
    }
    let mut u_star = f.u.clone();
    let records = std::array::from_fn(|a| {
        let desired = if bits[a] { 1.0 } else { -1.0 };
        let (delta1, delta2) = write_pair(&mut u_star, a, desired, cfg.threshold);
        BlockEmbedRecord {
            block_row: 0,
            block_col: 0,
            unit: a,
            bit: bits[a],
            margin: cfg.threshold,
            delta1,
            delta2,
        }
    });
    let rebuilt = u_star.mul(&f.sigma_as_quat())?.mul(&f.v.conj_transpose())?;
    Ok(Some((rebuilt, records)))
}

/// Reads the bit from one block: zero the real plane, factor, take the
/// plane with the largest magnitude gap, return the gap's sign. A fully
/// degenerate block falls through to `d = 0 → 1` (sign(0) := +1), which
/// scores as an erasure against whatever was embedded.
pub fn extract_block(block: &QuatMat) -> Result<bool> {
    let pure = QuatMat::from_fn(block.rows(), block.cols(), |r, c| {
        let mut q = block.get(r, c);
        q.w = 0.0;
        q
    });
    let f = qsvd(&pure)?;
    let d = gaps(&f);
    let mut best = 0;
    for a in 1..3 {
        if d[a].abs() > d[best].abs() {
            best = a;
        }
    }
    Ok(d[best] >= 0.0)
}

/// Reads all three plane bits of one block independently.
pub fn extract_block_triple(block: &QuatMat) -> Result<[bool; 3]> {
    let pure = QuatMat::from_fn(block.rows(), block.cols(), |r, c| {
        let mut q = block.get(r, c);
        q.w = 0.0;
        q
    });
    let f = qsvd(&pure)?;
    let d = gaps(&f);
    Ok([d[0] >= 0.0, d[1] >= 0.0, d[2] >= 0.0])
}

/// Embeds a payload into a host image. Bits are flattened row-major and
/// assigned to usable blocks in keyed order; unusable blocks are skipped
/// and recorded. Returns the watermarked image and the job report.
pub fn embed(
    host: &RgbImage,
    payload: &BitMatrix,
    key: u64,
    cfg: &EmbedConfig,
) -> Result<(RgbImage, EmbedReport)> {
    run_embed(host, key, cfg, payload.len(), |grid, order| {
        plan_assignments(grid, order, payload.as_slice(), cfg)
    })
}

/// Embeds three equal-shaped payloads, one bit of each per block.
pub fn embed_triple(
    host: &RgbImage,
    payloads: &[BitMatrix; 3],
    key: u64,
    cfg: &EmbedConfig,
) -> Result<(RgbImage, EmbedReport)> {
    let dims = (payloads[0].rows(), payloads[0].cols());
    if payloads.iter().any(|p| (p.rows(), p.cols()) != dims) {
        return Err(Error::shape("triple payload planes must share dimensions"));
    }
    let cfg = EmbedConfig { mode: Mode::Triple, ..*cfg };
    let kbits: Vec<[bool; 3]> = (0..payloads[0].len())
        .map(|i| {
            let (r, c) = (i / dims.1, i % dims.1);
            [payloads[0].get(r, c), payloads[1].get(r, c), payloads[2].get(r, c)]
        })
        .collect();
    run_embed(host, key, &cfg, kbits.len(), |grid, order| {
        plan_assignments_triple(grid, order, &kbits, &cfg)
    })
}

type Planned = (Vec<(usize, QuatMat, Vec<BlockEmbedRecord>)>, Vec<(usize, usize)>);

/// Shared pipeline: partition, schedule, plan block rewrites, stitch the
/// image back together, measure PSNR.
fn run_embed(
    host: &RgbImage,
    key: u64,
    cfg: &EmbedConfig,
    bit_count: usize,
    plan: impl Fn(&crate::image::blocks::BlockGrid, &[(usize, usize)]) -> Result<Planned>,
) -> Result<(RgbImage, EmbedReport)> {
    cfg.validate()?;
    let q = encode_quaternion(host);
    let mut grid = partition(&q, 4)?;
    let total = grid.len();
    if bit_count > total {
        return Err(Error::Capacity { required: bit_count, available: total });
    }
    let order = schedule::key_schedule(key, grid.grid_rows(), grid.grid_cols(), total)?;
    let (rewrites, skipped) = plan(&grid, &order)?;

    let mut records = Vec::with_capacity(rewrites.len());
    for (slot, block, recs) in rewrites {
        let (gr, gc) = order[slot];
        *grid.block_mut(gr, gc) = block;
        for mut r in recs {
            r.block_row = gr;
            r.block_col = gc;
            records.push(r);
        }
    }

    let covered = decode_quaternion(&grid.reassemble())?;
    // Paste the covered region over the host so a cropped remainder strip
    // survives untouched.
    let mut out = host.clone();
    for row in 0..covered.height() {
        for col in 0..covered.width() {
            out.set(row, col, covered.get(row, col));
        }
    }
    let quality = psnr(host, &out)?;
    Ok((
        out,
        EmbedReport {
            mode: cfg.mode,
            threshold: cfg.threshold,
            records,
            skipped,
            psnr: quality,
        },
    ))
}

/// Assigns single bits to scheduled blocks, skipping unusable ones, and
/// computes every rewritten block. The fast path assumes no skips and runs
/// fully in parallel; discovering a skip falls back to the sequential
/// skip-and-advance walk. Both paths are deterministic.
fn plan_assignments(
    grid: &crate::image::blocks::BlockGrid,
    order: &[(usize, usize)],
    bits: &[bool],
    cfg: &EmbedConfig,
) -> Result<Planned> {
    let optimistic: Vec<Option<(QuatMat, BlockEmbedRecord)>> = bits
        .par_iter()
        .enumerate()
        .map(|(slot, &bit)| {
            let (gr, gc) = order[slot];
            embed_block(grid.block(gr, gc), bit, cfg)
        })
        .collect::<Result<_>>()?;

    if optimistic.iter().all(Option::is_some) {
        let rewrites = optimistic
            .into_iter()
            .enumerate()
            .map(|(slot, some)| {
                let (block, rec) = some.expect("checked above");
                (slot, block, vec![rec])
            })
            .collect();
        return Ok((rewrites, Vec::new()));
    }

    // Skip-and-advance: a bit displaced by an unusable block moves to the
    // next scheduled block.
    let mut rewrites = Vec::with_capacity(bits.len());
    let mut skipped = Vec::new();
    let mut slot = 0usize;
    for &bit in bits {
        loop {
            if slot >= order.len() {
                return Err(Error::Capacity {
                    required: bits.len(),
                    available: bits.len() - (rewrites.len() + 1),
                });
            }
            let (gr, gc) = order[slot];
            match embed_block(grid.block(gr, gc), bit, cfg)? {
                Some((block, rec)) => {
                    rewrites.push((slot, block, vec![rec]));
                    slot += 1;
                    break;
                }
                None => {
                    skipped.push((gr, gc));
                    slot += 1;
                }
            }
        }
    }
    Ok((rewrites, skipped))
}

fn plan_assignments_triple(
    grid: &crate::image::blocks::BlockGrid,
    order: &[(usize, usize)],
    bits: &[[bool; 3]],
    cfg: &EmbedConfig,
) -> Result<Planned> {
    let optimistic: Vec<Option<(QuatMat, [BlockEmbedRecord; 3])>> = bits
        .par_iter()
        .enumerate()
        .map(|(slot, &kbits)| {
            let (gr, gc) = order[slot];
            embed_block_triple(grid.block(gr, gc), kbits, cfg)
        })
        .collect::<Result<_>>()?;

    if optimistic.iter().all(Option::is_some) {
        let rewrites = optimistic
            .into_iter()
            .enumerate()
            .map(|(slot, some)| {
                let (block, recs) = some.expect("checked above");
                (slot, block, recs.to_vec())
            })
            .collect();
        return Ok((rewrites, Vec::new()));
    }

    let mut rewrites = Vec::with_capacity(bits.len());
    let mut skipped = Vec::new();
    let mut slot = 0usize;
    for &kbits in bits {
        loop {
            if slot >= order.len() {
                return Err(Error::Capacity {
                    required: bits.len(),
                    available: bits.len() - (rewrites.len() + 1),
                });
            }
            let (gr, gc) = order[slot];
            match embed_block_triple(grid.block(gr, gc), kbits, cfg)? {
                Some((block, recs)) => {
                    rewrites.push((slot, block, recs.to_vec()));
                    slot += 1;
                    break;
                }
                None => {
                    skipped.push((gr, gc));
                    slot += 1;
                }
            }
        }
    }
    Ok((rewrites, skipped))
}

/// Extracts an `e×f` payload with the key. Blind: only the marked image,
/// the key and the payload shape are needed. Every scheduled block yields
/// a bit — degenerate blocks read as 1 and score as errors.
pub fn extract(img: &RgbImage, key: u64, dims: (usize, usize)) -> Result<BitMatrix> {
    let (e, f) = dims;
    let q = encode_quaternion(img);
    let grid = partition(&q, 4)?;
    let order = schedule::key_schedule(key, grid.grid_rows(), grid.grid_cols(), e * f)?;
    let bits: Vec<bool> = order
        .par_iter()
        .map(|&(gr, gc)| extract_block(grid.block(gr, gc)))
        .collect::<Result<_>>()?;
    BitMatrix::from_bits(e, f, bits)
}

/// Extracts the three plane payloads written by [`embed_triple`].
pub fn extract_triple(img: &RgbImage, key: u64, dims: (usize, usize)) -> Result<[BitMatrix; 3]> {
    let (e, f) = dims;
    let q = encode_quaternion(img);
    let grid = partition(&q, 4)?;
    let order = schedule::key_schedule(key, grid.grid_rows(), grid.grid_cols(), e * f)?;
    let tri: Vec<[bool; 3]> = order
        .par_iter()
        .map(|&(gr, gc)| extract_block_triple(grid.block(gr, gc)))
        .collect::<Result<_>>()?;
    let plane = |a: usize| BitMatrix::from_bits(e, f, tri.iter().map(|b| b[a]).collect());
    Ok([plane(0)?, plane(1)?, plane(2)?])
}
