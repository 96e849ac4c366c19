import _grbm
