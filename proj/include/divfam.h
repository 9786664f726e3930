#ifndef DIVFAM_H
#define DIVFAM_H

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes, shared with the CLI exit-code contract. */
#define DIVFAM_OK 0
#define DIVFAM_VIOLATED 1
#define DIVFAM_BAD_INPUT 2
#define DIVFAM_INTERNAL 3
#define DIVFAM_NOT_APPLICABLE 4

typedef struct divfam_family divfam_family;

/* Family text format: header "n=<int> mod=<int>", one 0/1 string per
 * member line, '#' starts a comment. */
int divfam_family_parse(const char* text, divfam_family** out, char** error);
char* divfam_family_format(const divfam_family* family);
void divfam_family_free(divfam_family* family);
void divfam_string_free(char* s);

/* JSON-in/JSON-out entry points. *out_json and *error are heap strings
 * owned by the caller; release with divfam_string_free. */

/* params: {"generator": "s"|"atomic"|"subspace"|"cross", ...generator args}.
 * out: {"schema":1, "families": [<family text>, ...]} */
int divfam_construct(const char* params_json, char** out_json, char** error);

/* params: {"primes": [int...], "closures": [{"k":int,"ell":int}...]} */
int divfam_analyze(const divfam_family* family, const char* params_json,
                   char** out_json, char** error);

/* lemma: bilinear | prime | primepower | smalldim | odim | oddtown |
 *        removal | cross | structure | stability.
 * Returns DIVFAM_OK / DIVFAM_VIOLATED / DIVFAM_NOT_APPLICABLE per the
 * three-valued verdict. */
int divfam_verify(const char* lemma, const char* params_json, char** out_json,
                  char** error);

/* params: {"n":int,"mod":int,"k":int,"mode":"pairwise"|"distinct"|"repetition",
 *          "budget_nodes":int,"threads":int,"emit_extremal":bool} */
int divfam_search(const char* params_json, char** out_json, char** error);

/* params: {"ell":int} or {"ell":int,"eps_num":int,"eps_den":int} */
int divfam_threshold(const char* params_json, char** out_json, char** error);

#ifdef __cplusplus
}
#endif
#endif
