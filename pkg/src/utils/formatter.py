import csv
import io
import json
import os
import sys
from typing import Any, Dict, List, Optional

from src.config.settings import resolve_output_path
from src.core.errors import UsageError

CSV_COLUMNS = {
    "gen": ["t", "value"],
    "acf": ["w", "re", "im", "norm_sq"],
    "survey": ["jvec", "lvec", "max_norm_sq", "lc_f4", "lc_z4", "class_id", "value_multiset"],
    "verify": ["claim", "status", "detail"],
    "numbers": ["i", "j", "value"],
}

STATUS_ICONS = {"pass": "✅", "fail": "❌", "skipped": "⏭️ ", "not-reproduced": "⚠️ "}


class OutputFormatter:
    def render(self, kind: str, document: Dict[str, Any], fmt: str = "text") -> str:
        """
        按格式渲染子命令的结果文档

        Args:
            kind: 子命令名
            document: 结果文档（与 JSON 输出同构）
            fmt: text、json 或 csv

        Returns:
            str: 渲染后的内容，以换行结尾
        """
        if fmt == "json":
            return self.to_json(document)
        if fmt == "csv":
            if kind not in CSV_COLUMNS:
                raise UsageError(f"{kind} 不支持 csv 输出，请使用 json 或 text")
            return self.to_csv(self.csv_rows(kind, document), CSV_COLUMNS[kind])
        if fmt == "text":
            return getattr(self, f"format_{kind}")(document) + "\n"
        raise UsageError(f"未知输出格式: {fmt}")

    @staticmethod
    def to_json(document: Dict[str, Any]) -> str:
        return json.dumps(document, ensure_ascii=False, indent=2, sort_keys=True) + "\n"

    @staticmethod
    def to_csv(rows: List[Dict[str, Any]], columns: List[str]) -> str:
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
        return buffer.getvalue()

    @staticmethod
    def csv_rows(kind: str, document: Dict[str, Any]) -> List[Dict[str, Any]]:
        if kind == "gen":
            return [{"t": t, "value": v} for t, v in enumerate(document["values"])]
        if kind == "acf":
            return document["rows"]
        if kind == "survey":
            return [{**r, "lc_z4": "" if r["lc_z4"] is None else r["lc_z4"]} for r in document["records"]]
        if kind == "verify":
            return document["results"]
        return [{"i": i, "j": j, "value": v}
                for i, row in enumerate(document["table"]) for j, v in enumerate(row)]

    # ------------------------------------------------------------------
    # 文本格式
    # ------------------------------------------------------------------

    @staticmethod
    def _header(title: str, document: Dict[str, Any]) -> List[str]:
        lines = ["=" * 60, title, f"📐 p = {document['p']}, g = {document['g']}"]
        if "jvec" in document:
            lines.append(f"🧩 jvec = {document['jvec']}, lvec = {document['lvec']}, variant = {document['variant']}")
        lines.append("=" * 60)
        return lines

    def format_gen(self, document: Dict[str, Any]) -> str:
        lines = self._header("🔢 四元分圆序列", document)
        values = document["values"]
        lines.append(f"周期 N = {len(values)}")
        for start in range(0, len(values), 20):
            chunk = values[start:start + 20]
            lines.append(f"  t={start:>4}: " + " ".join(str(v) for v in chunk))
        return "\n".join(lines)

    def format_acf(self, document: Dict[str, Any]) -> str:
        lines = self._header("📈 周期自相关", document)
        lines.append(f"{'w':>5} {'re':>6} {'im':>6} {'|R|^2':>7}")
        for row in document["rows"]:
            lines.append(f"{row['w']:>5} {row['re']:>6} {row['im']:>6} {row['norm_sq']:>7}")
        lines.append("")
        lines.append(f"🎯 max_(w≠0) |R(w)|^2 = {document['max_nontrivial_norm_sq']}")
        return "\n".join(lines)

    def format_lc(self, document: Dict[str, Any]) -> str:
        lines = self._header(f"🧮 线性复杂度（{document['ring'].upper()}）", document)
        lines.append(f"L = {document['L']}  （方法: {document['method']}）")
        if "bm_L" in document:
            lines.append(f"Berlekamp–Massey 校验: L = {document['bm_L']}")
        lines.append(f"多项式系数（升幂）: {document['poly_coeffs']}")
        certificate = document.get("certificate")
        if certificate:
            state = "已复核" if certificate["verified"] else "复核失败"
            lines.append(f"次数 {certificate['degree']} 无解证据: {state}")
        diagnostics = document.get("diagnostics")
        if diagnostics:
            lines.append("")
            lines.append(f"🔬 根诊断 GF(4^{diagnostics['ext_degree']}) / GF(2^{diagnostics['residue_degree']})")
            for name, value in diagnostics["checks"].items():
                icon = STATUS_ICONS["skipped" if value is None else ("pass" if value else "fail")]
                lines.append(f"  {icon} {name}")
            for notice in diagnostics["notices"]:
                lines.append(f"  ⚠️  {notice}")
        return "\n".join(lines)

    def format_numbers(self, document: Dict[str, Any]) -> str:
        lines = self._header("📊 四阶分圆数 (i, j)", document)
        lines.append("      " + " ".join(f"j={j:<3}" for j in range(4)))
        for i, row in enumerate(document["table"]):
            lines.append(f"i={i:<3} " + " ".join(f"{v:<5}" for v in row))
        partition = document["partition"]
        lines.append("")
        lines.append(f"Σ = {document['total']}，Σ(j,0) − Σ(j,2) = {document['identity_value']}")
        pinned = "" if partition["sign_pinned"] else "（符号未能确定）"
        lines.append(f"p = x^2 + 4y^2: x = {partition['x']}, y = {partition['y']}{pinned}")
        return "\n".join(lines)

    def format_survey(self, document: Dict[str, Any]) -> str:
        lines = self._header("🌐 全量枚举", document)
        records = document["records"]
        lines.append(f"记录数: {len(records)}，对称类数: {document['class_count']}")
        by_value: Dict[int, int] = {}
        for record in records:
            by_value[record["max_norm_sq"]] = by_value.get(record["max_norm_sq"], 0) + 1
        for value in sorted(by_value):
            lines.append(f"  max|R|^2 = {value:>4}: {by_value[value]} 组")
        optimality = document["optimality"]
        symmetries = document["symmetries"]
        lines.append("")
        icon = STATUS_ICONS["pass" if optimality["holds"] else "not-reproduced"]
        lines.append(f"{icon} 最优性（{optimality['label']}）: "
                     f"最小值 {optimality.get('min_max_norm_sq')}，eq6 为 {optimality.get('reference_max_norm_sq')}")
        if not optimality["holds"]:
            lines.append(f"    {len(optimality['counterexamples'])} 组分配向量优于 eq6，"
                         f"最小值由 {', '.join(optimality['optimal_keys'])} 取到")
        lines.append(f"{STATUS_ICONS['pass' if symmetries['holds'] else 'fail']} 对称性: {symmetries['classes']} 个类")
        return "\n".join(lines)

    def format_verify(self, document: Dict[str, Any]) -> str:
        lines = self._header("🔍 结论验证", document)
        width = max(len(r["claim"]) for r in document["results"])
        for result in document["results"]:
            lines.append(f"{STATUS_ICONS[result['status']]} {result['claim']:<{width}}  {result['detail']}")
        remarks = [r["claim"] for r in document["results"] if r["status"] == "not-reproduced"]
        if remarks:
            lines.append("")
            lines.append(f"⚠️  未复现的附注（不影响退出码）: {', '.join(remarks)}")
        lines.append("")
        if document["passed"]:
            lines.append("🎉 全部结论验证通过")
        else:
            lines.append(f"💥 未通过: {', '.join(document.get('failed_claims', []))}")
        return "\n".join(lines)

    def save_to_file(self, content: str, filename: str) -> Optional[str]:
        """
        将结果保存到文件

        Args:
            content: 要保存的内容
            filename: 文件名；只有文件名时写到默认输出目录

        Returns:
            str: 保存的文件路径，失败时为 None
        """
        path = resolve_output_path(filename)
        try:
            directory = os.path.dirname(path)
            if directory:
                os.makedirs(directory, exist_ok=True)
            with open(path, "w", encoding="utf-8", newline="") as f:
                f.write(content)
            return path
        except OSError as e:
            print(f"保存文件失败: {e}", file=sys.stderr)
            return None
