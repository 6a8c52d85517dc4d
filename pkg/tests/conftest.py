# Copyright 2023 Canonical Ltd.
#
# This program is free software: you can redistribute it and/or modify it
# under the terms of the GNU Lesser General Public License version 3, as
# published by the Free Software Foundation.
#
# This program is distributed in the hope that it will be useful, but WITHOUT
# ANY WARRANTY; without even the implied warranties of MERCHANTABILITY,
# SATISFACTORY QUALITY, or FITNESS FOR A PARTICULAR PURPOSE.  See the GNU
# General Public License for more details.
#
# You should have received a copy of the GNU General Public License along
# with this program.  If not, see <http://www.gnu.org/licenses/>.
import types

import pytest
from bruhat_lab.config import SystemDescriptor
from bruhat_lab.coxeter import CoxeterMatrix, CoxeterSystem, RootLatticeBackend, make_system


@pytest.fixture()
def project_main_module() -> types.ModuleType:
    """Fixture that returns the project's principal package (imported)."""
    try:
        import bruhat_lab

        main_module = bruhat_lab
    except ImportError:
        pytest.fail(
            "Failed to import the project's main module: check if it needs updating",
        )
    return main_module


@pytest.fixture(scope="session")
def a3() -> CoxeterSystem:
    """The symmetric group on four letters."""
    return make_system(SystemDescriptor.type_a(3))


@pytest.fixture(scope="session")
def a4() -> CoxeterSystem:
    """The symmetric group on five letters."""
    return make_system(SystemDescriptor.type_a(4))


@pytest.fixture(scope="session")
def a5() -> CoxeterSystem:
    """The symmetric group on six letters."""
    return make_system(SystemDescriptor.type_a(5))


@pytest.fixture(scope="session")
def a3_lattice() -> CoxeterSystem:
    """A3 realised through the root lattice instead of permutations."""
    matrix = CoxeterMatrix.type_a(3)
    return CoxeterSystem(matrix, RootLatticeBackend(matrix.cartan()))


@pytest.fixture(scope="session")
def b3() -> CoxeterSystem:
    """The hyperoctahedral group of rank 3 from its Coxeter matrix."""
    return make_system(
        SystemDescriptor(coxeter_matrix=[[1, 4, 2], [4, 1, 3], [2, 3, 1]]),
    )
