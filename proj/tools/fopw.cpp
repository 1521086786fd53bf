// SPDX-License-Identifier: Apache-2.0

#include "fopw/cli.hpp"

int main(int argc, char** argv) { return fopw::run(argc, argv); }
