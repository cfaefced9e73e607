//! Enumerate every small block and every legal payload; each must decode to
//! the original block and chunk. A deliberately broken decoder shows what a
//! counterexample looks like.

use rdh::oracle::{exhaustive_block_check, SwappedDecodeTable};
use rdh::CodecId;

fn main() {
    for id in CodecId::ALL {
        let r = exhaustive_block_check(id.codec(), 4, 6);
        println!("{:<6} 2x2 over 0..=5: cases={} failures={}", id.name(), r.cases, r.failure_count);
    }
    let r = exhaustive_block_check(CodecId::Ppvok.codec(), 6, 5);
    println!("PPVOK  2x3 over 0..=4: cases={} failures={}", r.cases, r.failure_count);

    let broken = exhaustive_block_check(&SwappedDecodeTable, 4, 4);
    println!("broken decoder: failures={}", broken.failure_count);
    if let Some(cx) = broken.failures.first() {
        println!("  first counterexample: {cx}");
    }
}
