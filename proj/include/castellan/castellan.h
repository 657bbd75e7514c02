// Copyright 2026 The Castellan Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the castellan library. All strings returned through
 * `char**` out-parameters are owned by the caller and released with
 * cst_string_free. Functions returning cst_status leave a message for
 * cst_last_error on failure. */

#ifndef CASTELLAN_CASTELLAN_H_
#define CASTELLAN_CASTELLAN_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CST_API __declspec(dllexport)
#else
#define CST_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  CST_OK = 0,
  CST_ERR_INVALID_ARGUMENT = 1,
  CST_ERR_PRECONDITION = 2,
  CST_ERR_CAP_EXCEEDED = 3,
  CST_ERR_PARSE = 4,
  CST_ERR_SCHEMA = 5,
  CST_ERR_IO = 6,
  CST_ERR_PIPELINE = 7,
  CST_ERR_INTERNAL = 8
} cst_status;

typedef struct cst_certificate cst_certificate;
typedef struct cst_action cst_action;

typedef struct {
  int schema_ok;
  int seal_ok;
  int semantic_ok;
  int passed;
  int ok; /* all of the above */
} cst_verify_result;

CST_API const char* cst_version(void);

/* Message of the last failed call on this thread, or "". */
CST_API const char* cst_last_error(void);

CST_API void cst_string_free(char* s);

/* Runs a pipeline. A configuration error returns CST_ERR_PARSE or
 * CST_ERR_SCHEMA; a pipeline that fails still yields a certificate with
 * cst_certificate_passed() == 0. */
CST_API cst_status cst_run_config_file(const char* path, int timing,
                                       cst_certificate** out);
CST_API cst_status cst_run_config_string(const char* text, int timing,
                                         cst_certificate** out);

CST_API int cst_certificate_passed(const cst_certificate* cert);
CST_API cst_status cst_certificate_json(const cst_certificate* cert,
                                        char** out);
CST_API cst_status cst_certificate_detail(const cst_certificate* cert,
                                          char** out);
CST_API cst_status cst_certificate_write(const cst_certificate* cert,
                                         const char* path);
CST_API void cst_certificate_free(cst_certificate* cert);

/* Audit path. `detail` may be NULL. */
CST_API cst_status cst_verify_json(const char* json, cst_verify_result* result,
                                   char** detail);
CST_API cst_status cst_verify_file(const char* path, cst_verify_result* result,
                                   char** detail);

CST_API cst_status cst_export_csv(const char* cert_json, const char* series,
                                  char** csv);

/* Density queries on Z acting on Z/n by +1. Results are "p/q" strings. */
CST_API cst_status cst_action_cyclic(uint64_t n, cst_action** out);
CST_API void cst_action_free(cst_action* act);
CST_API cst_status cst_banach_density(const cst_action* act,
                                      const uint64_t* states, size_t count,
                                      int upper, char** out);

#ifdef __cplusplus
}
#endif

#endif /* CASTELLAN_CASTELLAN_H_ */
