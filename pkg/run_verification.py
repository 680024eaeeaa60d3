#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
批量验证脚本
对一组素数逐个运行 verify 子命令，并在输出目录写入摘要
"""

import argparse
import json
import os
import subprocess
import sys

# 添加当前项目目录到Python路径
project_root = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, project_root)

from src.config.settings import get_output_dir

DEFAULT_PRIMES = [5, 13, 17, 29, 37, 41]


def ensure_output_directory():
    """确保输出目录存在"""
    output_dir = get_output_dir()
    if not os.path.exists(output_dir):
        os.makedirs(output_dir)
    return output_dir


def run_verification(p, seed=None):
    """运行单个素数的验证，返回 (退出码, 结果文档或 None)"""
    cmd = [
        sys.executable,
        os.path.join(project_root, 'src', 'main.py'),
        'verify', '--p', str(p),
        '--format', 'json',
        '--verbose'
    ]
    if seed is not None:
        cmd.extend(['--seed', str(seed)])

    print(f"🚀 开始验证 p = {p} ...")
    try:
        result = subprocess.run(cmd, capture_output=True, text=True, encoding='utf-8')
        if result.stderr:
            print("📝 运行日志:")
            print(result.stderr)
        document = json.loads(result.stdout) if result.stdout.strip() else None
        return result.returncode, document
    except Exception as e:
        print(f"\n💥 运行出错: {e}")
        return 1, None


def generate_summary(output_dir, outcomes):
    """生成验证摘要"""
    summary_file = os.path.join(output_dir, 'verification-summary.txt')
    lines = ["四元分圆序列结论验证摘要", "-" * 40, ""]
    for p, (code, document) in outcomes.items():
        if document is None:
            lines.append(f"💥 p = {p}: 无输出（退出码 {code}）")
            continue
        counts = {"pass": 0, "fail": 0, "skipped": 0, "not-reproduced": 0}
        for r in document["results"]:
            counts[r["status"]] += 1
        icon = "✅" if code == 0 else "❌"
        lines.append(f"{icon} p = {p}: 通过 {counts['pass']}，失败 {counts['fail']}，跳过 {counts['skipped']}，"
                     f"附注未复现 {counts['not-reproduced']}")
        for claim in document.get("failed_claims", []):
            lines.append(f"    - {claim}")
    with open(summary_file, 'w', encoding='utf-8') as f:
        f.write("\n".join(lines) + "\n")
    print(f"\n📄 摘要已保存到: {summary_file}")
    return summary_file


def main():
    """主函数"""
    parser = argparse.ArgumentParser(description='批量验证四元分圆序列的各项结论')
    parser.add_argument('--primes', type=str, default=','.join(map(str, DEFAULT_PRIMES)),
                        help='逗号分隔的素数列表')
    parser.add_argument('--seed', type=int, help='扩域随机抽取的种子')
    args = parser.parse_args()

    primes = [int(p) for p in args.primes.split(',') if p.strip()]
    output_dir = ensure_output_directory()
    outcomes = {p: run_verification(p, args.seed) for p in primes}
    generate_summary(output_dir, outcomes)

    success = all(code == 0 for code, _ in outcomes.values())
    print("\n✅ 全部验证通过!" if success else "\n❌ 存在未通过的验证")
    sys.exit(0 if success else 1)


if __name__ == "__main__":
    main()
