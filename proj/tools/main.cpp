// SPDX-License-Identifier: Apache-2.0

#include "mmcoexist/cli.hpp"

int main(int argc, char** argv) { return mmcoexist::cli_main(argc, argv); }
