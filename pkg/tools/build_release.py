# Release build script for thetaglue.
# Freezes the command line with PyInstaller and packs it into a zip.

import os
import sys
import shutil
import platform
import subprocess
import zipfile
from pathlib import Path

VERSION = "1.0.0"
APP_NAME = "thetaglue"
DIST_DIR = Path("dist")
BUILD_DIR = Path("build")
ROOT_DIR = Path(__file__).parent.parent
TOTAL_STEPS = 6


def print_step(step_num, total, message):
    """Print step header."""
    print(f"\n{'='*70}")
    print(f"[{step_num}/{total}] {message}")
    print(f"{'='*70}\n")


def clean_build():
    """Remove previous build artifacts."""
    print_step(1, TOTAL_STEPS, "Cleaning previous builds")

    for path in [DIST_DIR, BUILD_DIR]:
        if path.exists():
            print(f"  Removing {path}/")
            shutil.rmtree(path, ignore_errors=True)

    spec_file = ROOT_DIR / f"{APP_NAME}.spec"
    if spec_file.exists():
        print(f"  Removing {spec_file}")
        spec_file.unlink()

    print("  Clean complete")


def run_pyinstaller():
    """Build executable with PyInstaller."""
    print_step(2, TOTAL_STEPS, "Building executable with PyInstaller")

    cmd = [
        sys.executable, "-m", "PyInstaller",
        "--noconfirm",
        "--clean",
        "--name", APP_NAME,
        "--onedir",
        "--console",
        "--paths", "src",
        "src/thetaglue/main.py"
    ]

    print(f"  Running: {' '.join(cmd)}")
    result = subprocess.run(cmd, cwd=ROOT_DIR)

    if result.returncode != 0:
        print("\n  ERROR: PyInstaller failed!")
        sys.exit(1)

    print("  Executable built")


def copy_docs():
    """Copy README, license and a sample lattice spec to the distribution."""
    print_step(3, TOTAL_STEPS, "Copying documentation")

    dist_root = DIST_DIR / APP_NAME
    for name in ("README.md", "LICENSE", "CHANGELOG.md"):
        src = ROOT_DIR / name
        if src.exists():
            print(f"  Copying {name}")
            shutil.copy2(src, dist_root / name)

    sample = dist_root / "specs"
    sample.mkdir(exist_ok=True)
    (sample / "d8_cubed.json").write_text(
        '{\n  "family": "ODD_8M",\n  "k": 3,\n  "m": "1,1,1",\n  "epsilon": 0\n}\n', encoding="utf-8"
    )
    print("  Documentation copied")


def create_archive() -> Path:
    """Create the release zip."""
    print_step(4, TOTAL_STEPS, "Creating release archive")

    dist_folder = DIST_DIR / APP_NAME
    for pycache in dist_folder.rglob('__pycache__'):
        if pycache.is_dir():
            shutil.rmtree(pycache, ignore_errors=True)

    zip_name = f"{APP_NAME}-v{VERSION}-{platform.system().lower()}-{platform.machine().lower()}.zip"
    zip_path = DIST_DIR / zip_name
    if zip_path.exists():
        zip_path.unlink()

    with zipfile.ZipFile(zip_path, 'w', zipfile.ZIP_DEFLATED, compresslevel=9) as zf:
        for file_path in dist_folder.rglob('*'):
            if file_path.is_file():
                zf.write(file_path, file_path.relative_to(DIST_DIR))

    size_mb = zip_path.stat().st_size / (1024 * 1024)
    print(f"    {zip_path.name} ({size_mb:.1f} MB)")
    return zip_path


def verify_build() -> bool:
    """Verify the build output by running the frozen executable once."""
    print_step(5, TOTAL_STEPS, "Verifying build")

    dist_folder = DIST_DIR / APP_NAME
    exe_name = f"{APP_NAME}.exe" if os.name == "nt" else APP_NAME
    exe_path = dist_folder / exe_name
    if not exe_path.exists():
        print(f"  MISSING executable at {exe_path}")
        return False

    result = subprocess.run([str(exe_path), "series", "E4", "--order", "8", "--format", "csv"],
                            capture_output=True, text=True)
    expected = "exponent,coefficient\n0,1\n2,240\n4,2160\n6,6720\n"
    if result.returncode != 0 or result.stdout != expected:
        print(f"  Smoke test failed (exit {result.returncode}):\n{result.stdout}{result.stderr}")
        return False

    print("  Smoke test passed")
    return True


def summary(zip_path: Path, ok: bool):
    """Print build summary."""
    print_step(6, TOTAL_STEPS, "Build Summary")
    print(f"    Executable: dist/{APP_NAME}/")
    print(f"    ZIP Archive: {zip_path.name}")
    print("\n  Build complete!" if ok else "\n  Build finished with warnings")


def main():
    """Main build process."""
    print(f"\n{'='*70}")
    print(f"Building {APP_NAME} v{VERSION}")
    print(f"{'='*70}\n")

    os.chdir(ROOT_DIR)

    try:
        clean_build()
        run_pyinstaller()
        copy_docs()
        zip_path = create_archive()
        ok = verify_build()
        summary(zip_path, ok)

    except Exception as e:
        print(f"\n{'='*70}")
        print(f"BUILD FAILED: {e}")
        print(f"{'='*70}\n")
        sys.exit(1)


if __name__ == "__main__":
    main()
