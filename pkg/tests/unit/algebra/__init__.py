# This file is part of tapestry, licensed under the BSD-3-Clause License.
