#pragma once

namespace gls {

// Entry point of the command line tool. Exit codes: 0 success, 1 usage or
// configuration error, 2 verification violation.
int cli_main(int argc, char** argv);

}  // namespace gls
