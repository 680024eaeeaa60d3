#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
四元分圆序列工具主入口

构造周期 2p 的四元分圆序列，精确计算周期自相关、GF(4) 与 Z4 上的线性复杂度，
枚举全部分配向量，并逐条验证相关结论。
"""

import argparse
import io
import os
import sys
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

# 设置标准输出编码为UTF-8（Windows兼容）
if sys.platform == "win32":
    sys.stdout = io.TextIOWrapper(sys.stdout.buffer, encoding='utf-8', line_buffering=True)
    sys.stderr = io.TextIOWrapper(sys.stderr.buffer, encoding='utf-8', line_buffering=True)

# 添加项目根目录到Python路径
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.config.settings import get_default_seed, get_default_workers, get_diagnostic_limit
from src.core.autocorr import acf_direct
from src.core.cyclotomy import build_system, cyclotomic_numbers, quadratic_partition, validate_prime
from src.core.errors import DomainError, UsageError
from src.core.lincomp import lc_f4_bm, lc_f4_gcd, lc_z4, root_diagnostics
from src.core.ring_arith import poly_coeffs
from src.core.seqgen import SequenceSpec, Variant, build_sequence, gray_map, preset_spec
from src.core.survey import check_optimality, check_symmetries, class_count, run_survey
from src.core.verifier import ClaimVerifier, failed_claims
from src.services.schema_service import SchemaService
from src.utils.formatter import OutputFormatter

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


@dataclass
class RunConfig:
    subcommand: str
    p: int
    g: Optional[int] = None
    preset: Optional[str] = None
    jvec: Optional[Tuple[int, ...]] = None
    lvec: Optional[Tuple[int, ...]] = None
    variant: Variant = Variant.STANDARD
    ring: str = "f4"
    format: str = "text"
    out: Optional[str] = None
    diagnostics: bool = False
    diagnostic_limit: Optional[int] = None
    with_lc_z4: bool = False
    workers: int = 1
    seed: Optional[int] = None
    verbose: bool = False
    debug: bool = False


def _parse_vector(text: Optional[str], name: str) -> Optional[Tuple[int, ...]]:
    if text is None:
        return None
    try:
        return tuple(int(v) for v in text.replace(" ", "").split(","))
    except ValueError:
        raise UsageError(f"--{name} 格式应为 a,b,c,d: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--p', type=int, required=True, help='素数 p，要求 p ≡ 1 (mod 4)')
    common.add_argument('--g', type=int, help='模 p 的原根，默认取最小原根')
    common.add_argument('--format', choices=['text', 'json', 'csv'], default='text', help='输出格式，默认 text')
    common.add_argument('--out', type=str, help='输出文件（可选），只给文件名时写到 CYCLO_OUTPUT_DIR')
    common.add_argument('--verbose', action='store_true', help='显示详细处理过程')
    common.add_argument('--debug', action='store_true', help='显示调试信息（包括中间数据）')

    spec_args = argparse.ArgumentParser(add_help=False)
    spec_args.add_argument('--preset', choices=['eq6', 'eq7'], help='命名构造，默认 eq6')
    spec_args.add_argument('--jvec', type=str, help='偶数位分配向量，如 0,1,2,3')
    spec_args.add_argument('--lvec', type=str, help='奇数位分配向量，如 1,2,3,0')
    spec_args.add_argument('--variant', choices=[v.value for v in Variant], default=Variant.STANDARD.value,
                           help='zeroed 表示 s(0) = s(p) = 0')

    diag_args = argparse.ArgumentParser(add_help=False)
    diag_args.add_argument('--seed', type=int, help='扩域随机抽取的种子，默认读取 CYCLO_SEED')
    diag_args.add_argument('--diagnostic-limit', type=int, help='根诊断允许的最大扩域次数')

    parser = argparse.ArgumentParser(description='四元分圆序列：自相关与线性复杂度')
    sub = parser.add_subparsers(dest='subcommand', required=True)
    sub.add_parser('gen', parents=[common, spec_args], help='生成序列')
    sub.add_parser('acf', parents=[common, spec_args], help='周期自相关')
    lc = sub.add_parser('lc', parents=[common, spec_args, diag_args], help='线性复杂度')
    lc.add_argument('--ring', choices=['f4', 'z4'], default='f4', help='GF(4)（Gray 映射后）或 Z4')
    lc.add_argument('--diagnostics', action='store_true', help='附带扩域根诊断')
    sub.add_parser('numbers', parents=[common], help='四阶分圆数与二次分解')
    survey = sub.add_parser('survey', parents=[common], help='枚举全部 576 组分配向量')
    survey.add_argument('--with-lc-z4', action='store_true', help='同时计算 Z4 线性复杂度（较慢）')
    survey.add_argument('--workers', type=int, help='并行进程数，默认读取 CYCLO_WORKERS')
    sub.add_parser('verify', parents=[common, diag_args], help='逐条验证结论')
    return parser


def parse_config(argv: Optional[Sequence[str]] = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    return RunConfig(
        subcommand=args.subcommand,
        p=args.p,
        g=args.g,
        preset=getattr(args, 'preset', None),
        jvec=_parse_vector(getattr(args, 'jvec', None), 'jvec'),
        lvec=_parse_vector(getattr(args, 'lvec', None), 'lvec'),
        variant=Variant(getattr(args, 'variant', Variant.STANDARD.value)),
        ring=getattr(args, 'ring', 'f4'),
        format=args.format,
        out=args.out,
        diagnostics=getattr(args, 'diagnostics', False),
        diagnostic_limit=getattr(args, 'diagnostic_limit', None),
        with_lc_z4=getattr(args, 'with_lc_z4', False),
        workers=getattr(args, 'workers', None) or get_default_workers(),
        seed=getattr(args, 'seed', None),
        verbose=args.verbose or args.debug,
        debug=args.debug,
    )


def resolve_spec(config: RunConfig) -> SequenceSpec:
    """由 --preset 或 --jvec/--lvec 得到序列规格"""
    if config.preset and (config.jvec or config.lvec):
        raise UsageError("--preset 与 --jvec/--lvec 不能同时使用")
    if config.jvec or config.lvec:
        if not (config.jvec and config.lvec):
            raise UsageError("--jvec 与 --lvec 必须同时给出")
        g = build_system(config.p, config.g).g
        return SequenceSpec(p=config.p, g=g, jvec=config.jvec, lvec=config.lvec, variant=config.variant)
    return preset_spec(config.p, config.g, config.preset or "eq6", config.variant)


def _progress(config: RunConfig, message: str) -> None:
    if config.verbose:
        print(message, file=sys.stderr, flush=True)


def build_document(config: RunConfig) -> Dict[str, Any]:
    """执行子命令，返回与 JSON 输出同构的结果文档"""
    if config.subcommand == "numbers":
        sys_ = build_system(config.p, config.g)
        numbers = cyclotomic_numbers(sys_)
        partition = quadratic_partition(sys_, numbers)
        return {
            "p": sys_.p, "g": sys_.g,
            "table": [list(row) for row in numbers.table],
            "total": numbers.total,
            "identity_value": numbers.identity_value,
            "partition": {"x": partition.x, "y": partition.y, "sign_pinned": partition.sign_pinned},
        }

    if config.subcommand == "survey":
        _progress(config, f"🌐 枚举 p = {config.p} 的全部 576 组分配向量（{config.workers} 个进程）...")
        records = run_survey(config.p, config.g, with_lc_z4=config.with_lc_z4, workers=config.workers)
        return {
            "p": config.p, "g": records[0].spec.g,
            "records": [{**r.to_row(), "lc_z4": r.lc_z4} for r in records],
            "class_count": class_count(records),
            "optimality": check_optimality(records),
            "symmetries": check_symmetries(records),
        }

    if config.subcommand == "verify":
        verifier = ClaimVerifier(verbose=config.verbose, debug=config.debug, seed=config.seed,
                                 diagnostic_limit=config.diagnostic_limit)
        results = verifier.verify(config.p, config.g)
        failed = failed_claims(results)
        return {"p": config.p, "g": build_system(config.p, config.g).g,
                "passed": not failed, "failed_claims": failed, "results": results}

    spec = resolve_spec(config)
    seq = build_sequence(spec)
    document: Dict[str, Any] = spec.to_dict()
    if config.subcommand == "gen":
        document["values"] = list(seq.values)
        return document

    if config.subcommand == "acf":
        profile = acf_direct(seq)
        document["rows"] = profile.to_rows()
        document["max_nontrivial_norm_sq"] = profile.max_nontrivial_norm_sq
        return document

    # lc
    u = gray_map(seq)
    document["ring"] = config.ring
    if config.ring == "f4":
        result = lc_f4_gcd(u)
        document["bm_L"] = lc_f4_bm(u).L
        document["gcd_coeffs"] = poly_coeffs(result.gcd)
        document["certificate"] = None
    else:
        result = lc_z4(seq)
        cert = result.certificate
        document["certificate"] = None if cert is None else {
            "degree": cert.degree, "y": list(cert.y), "verified": cert.verified}
    document["L"] = result.L
    document["poly_coeffs"] = result.poly_coeffs()
    document["method"] = result.method.value
    document["diagnostics"] = None
    if config.diagnostics:
        report = root_diagnostics(u, build_system(spec.p, spec.g), seq,
                                  limit=config.diagnostic_limit or get_diagnostic_limit(),
                                  seed=get_default_seed() if config.seed is None else config.seed)
        document["diagnostics"] = {
            "ext_degree": report.ext_degree,
            "residue_degree": report.residue_degree,
            "checks": report.checks,
            "notices": report.notices,
            "details": report.details,
        }
    return document


def run(config: RunConfig) -> Tuple[int, str]:
    """
    校验参数并执行子命令

    Args:
        config: 运行配置

    Returns:
        (退出码, 渲染后的内容)
    """
    try:
        validate_prime(config.p)
    except DomainError as e:
        raise UsageError(str(e))
    if config.workers < 1:
        raise UsageError("--workers 必须为正整数")
    if config.diagnostic_limit is not None and config.diagnostic_limit < 1:
        raise UsageError("--diagnostic-limit 必须为正整数")

    document = build_document(config)
    if config.format == "json":
        SchemaService().validate(config.subcommand, document)
    content = OutputFormatter().render(config.subcommand, document, config.format)

    if config.subcommand == "verify" and not document["passed"]:
        print(f"❌ 未通过的结论: {', '.join(document['failed_claims'])}", file=sys.stderr)
        return EXIT_FAILED, content
    return EXIT_OK, content


def main(argv: Optional[List[str]] = None) -> int:
    """主函数"""
    try:
        config = parse_config(argv)
    except UsageError as e:
        print(f"❌ 参数错误: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        # argparse 的解析错误（退出码 2）与 --help（退出码 0）
        return int(e.code or 0)

    formatter = OutputFormatter()
    try:
        status, content = run(config)
    except (UsageError, DomainError) as e:
        print(f"❌ 参数错误: {e}", file=sys.stderr)
        return EXIT_USAGE
    except KeyboardInterrupt:
        print("\n⏹️ 用户中断程序执行", file=sys.stderr)
        return EXIT_FAILED
    except Exception as e:
        print(f"\n💥 系统执行出现错误: {e}", file=sys.stderr)
        if config.verbose:
            import traceback
            traceback.print_exc()
        return EXIT_FAILED

    if config.out:
        saved_file = formatter.save_to_file(content, config.out)
        if saved_file:
            _progress(config, f"✅ 结果已保存到文件: {saved_file}")
        else:
            print("❌ 保存文件失败，将输出到控制台", file=sys.stderr)
            sys.stdout.write(content)
    else:
        sys.stdout.write(content)
    return status


if __name__ == "__main__":
    sys.exit(main())
