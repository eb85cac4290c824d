#!/usr/bin/env python3
"""
Scripts para Análise de Cobertura - agent-hamiltonians
======================================================

Roda a suíte com cobertura e resume o resultado por motor.

    python coverage_scripts.py run        # sem testes lentos
    python coverage_scripts.py run --all  # inclui varreduras e ensembles
    python coverage_scripts.py summary
    python coverage_scripts.py check
"""

import json
import subprocess
import sys
from pathlib import Path

PACKAGES = ("agent_hamiltonians", "tensor_core", "classical_engine", "quantum_engine", "infogeo", "scenarios", "cli")
COVERAGE_JSON = Path("coverage.json")
MINIMUM_TOTAL = 80


def run_coverage_analysis(include_slow=False):
    """Executa os testes com cobertura; retorna True se a suíte passou"""
    print("🔍 Executando análise de cobertura...")
    subprocess.run(["coverage", "erase"], check=True)

    command = [
        sys.executable,
        "-m",
        "pytest",
        *(f"--cov={package}" for package in PACKAGES),
        "--cov-branch",
        "--cov-report=term-missing",
        "--cov-report=html:htmlcov",
        f"--cov-report=json:{COVERAGE_JSON}",
    ]
    if not include_slow:
        command += ["-m", "not slow"]

    result = subprocess.run(command)
    return result.returncode == 0


def _load():
    with COVERAGE_JSON.open(encoding="utf-8") as handle:
        return json.load(handle)


def get_coverage_status(coverage_pct):
    if coverage_pct >= 90:
        return "🌟"
    elif coverage_pct >= MINIMUM_TOTAL:
        return "✅"
    elif coverage_pct >= 70:
        return "⚠️"
    return "🚨"


def generate_coverage_summary():
    """Cobertura total e por pacote"""
    try:
        data = _load()
    except FileNotFoundError:
        print("❌ Arquivo coverage.json não encontrado. Execute os testes primeiro.")
        return False

    totals = data.get("totals", {})
    print("\n" + "=" * 60)
    print("RESUMO DE COBERTURA")
    print("=" * 60)
    print(f"📝 Linhas: {totals.get('covered_lines', 0)}/{totals.get('num_statements', 0)}")
    print(f"🌿 Branches: {totals.get('covered_branches', 0)}/{totals.get('num_branches', 0)}")
    print(f"📊 Total: {totals.get('percent_covered', 0):.2f}%")

    packages = {}
    for filepath, file_data in data.get("files", {}).items():
        package = Path(filepath).parts[0]
        stats = packages.setdefault(package, {"files": 0, "statements": 0, "covered": 0})
        summary = file_data.get("summary", {})
        stats["files"] += 1
        stats["statements"] += summary.get("num_statements", 0)
        stats["covered"] += summary.get("covered_lines", 0)

    print("\n📂 COBERTURA POR PACOTE:")
    print("-" * 60)
    for package, stats in sorted(packages.items()):
        if stats["statements"]:
            coverage_pct = 100 * stats["covered"] / stats["statements"]
            print(f"{package:20} {coverage_pct:6.1f}% {get_coverage_status(coverage_pct)} ({stats['files']} arquivos)")
    return True


def check_coverage_requirements():
    """Verifica o mínimo de cobertura total"""
    try:
        coverage_pct = _load().get("totals", {}).get("percent_covered", 0)
    except FileNotFoundError:
        print("❌ Arquivo coverage.json não encontrado. Execute os testes primeiro.")
        return False

    if coverage_pct >= MINIMUM_TOTAL:
        print(f"✅ Cobertura {coverage_pct:.2f}% atende o mínimo de {MINIMUM_TOTAL}%")
        return True
    print(f"🚨 INSUFICIENTE: faltam {MINIMUM_TOTAL - coverage_pct:.2f}% para o mínimo")
    return False


def main():
    print("🧪 AGENT-HAMILTONIANS - ANÁLISE DE COBERTURA")
    print("=" * 60)

    command = sys.argv[1].lower() if len(sys.argv) > 1 else "run"
    if command == "run":
        passed = run_coverage_analysis(include_slow="--all" in sys.argv)
        ok = generate_coverage_summary() and check_coverage_requirements()
        sys.exit(0 if passed and ok else 1)
    elif command == "summary":
        generate_coverage_summary()
    elif command == "check":
        sys.exit(0 if check_coverage_requirements() else 1)
    else:
        print("Comandos disponíveis:")
        print("  run [--all] - Executa a suíte com cobertura")
        print("  summary     - Resumo por pacote")
        print("  check       - Verifica o mínimo de cobertura")


if __name__ == "__main__":
    main()
