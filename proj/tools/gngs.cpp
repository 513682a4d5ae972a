// SPDX-License-Identifier: Apache-2.0

#include "gngs/cli.hpp"

int main(int argc, char **argv) { return gngs::cli::main(argc, argv); }
