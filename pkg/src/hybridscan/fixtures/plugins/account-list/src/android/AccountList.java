package org.example.accountlist;

import org.apache.cordova.CallbackContext;
import org.apache.cordova.CordovaPlugin;
import org.apache.cordova.PluginResult;
import org.json.JSONArray;
import org.json.JSONException;
import org.json.JSONObject;
import android.accounts.AccountManager;

public class AccountList extends CordovaPlugin {
    @Override
    public boolean execute(String action, JSONArray args, CallbackContext callbackContext) throws JSONException {
        AccountManager am = AccountManager.get(cordova.getActivity());
        callbackContext.success(toJson(am.getAccounts()));
        return true;
    }
}
