"""Builds the pybind11 extension through the project's CMake build.

Requires cmake >= 3.20 and a C++20 compiler on PATH. Use
`pip install -e . --no-build-isolation` for development installs.
"""

import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name: str):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext: CMakeExtension) -> None:
        source_dir = Path(__file__).parent.resolve()
        build_dir = Path(self.build_temp).resolve()
        build_dir.mkdir(parents=True, exist_ok=True)
        config = "Debug" if self.debug else "Release"

        subprocess.run(
            [
                "cmake",
                "-S", str(source_dir),
                "-B", str(build_dir),
                f"-DCMAKE_BUILD_TYPE={config}",
                f"-DPython3_EXECUTABLE={sys.executable}",
            ],
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "_core", "--parallel"],
            check=True,
        )

        # CMake stages the module under <build>/python/hpcmodel/.
        staged = sorted((build_dir / "python" / "hpcmodel").glob("_core*"))
        if not staged:
            raise RuntimeError(
                "CMake did not produce the _core extension; "
                "check that pybind11 was found during configure"
            )
        target = Path(self.get_ext_fullpath(ext.name))
        target.parent.mkdir(parents=True, exist_ok=True)
        self.copy_file(str(staged[0]), str(target))


setup(
    ext_modules=[CMakeExtension("hpcmodel._core")],
    cmdclass={"build_ext": CMakeBuild},
)
